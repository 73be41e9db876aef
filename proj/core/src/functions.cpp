#include "progmom/functions.hpp"

#include <algorithm>
#include <cmath>

#include "progmom/progression.hpp"

namespace progmom {

AdditiveFunction builtin(const std::string& name) {
    if (name == "omega")
        return {"omega", [](std::uint64_t, std::uint32_t) { return 1.0; }, true};
    if (name == "big_omega")
        return {"big_omega", [](std::uint64_t, std::uint32_t a) { return static_cast<double>(a); }, false};
    if (name == "omega_diff")
        return {"omega_diff", [](std::uint64_t, std::uint32_t a) { return static_cast<double>(a) - 1.0; }, false};
    if (name == "log_phi_ratio")
        return {"log_phi_ratio",
                [](std::uint64_t p, std::uint32_t) { return std::log1p(-1.0 / static_cast<double>(p)); }, true};
    if (name == "big_omega_minus_log_phi_ratio")
        return {"big_omega_minus_log_phi_ratio",
                [](std::uint64_t p, std::uint32_t a) {
                    return static_cast<double>(a) - std::log1p(-1.0 / static_cast<double>(p));
                },
                false};
    if (name == "log_m")
        return {"log_m",
                [](std::uint64_t p, std::uint32_t a) {
                    return static_cast<double>(a) * std::log(static_cast<double>(p));
                },
                false};
    if (name == "log_p_sum")
        return {"log_p_sum", [](std::uint64_t p, std::uint32_t) { return std::log(static_cast<double>(p)); }, true};
    throw LookupError("unknown built-in function: " + name);
}

std::vector<std::string> builtin_names() {
    return {"omega",  "big_omega", "omega_diff", "log_phi_ratio", "big_omega_minus_log_phi_ratio",
            "log_m", "log_p_sum"};
}

AdditiveFunction strongly_additive_companion(const AdditiveFunction& f) {
    auto base = f.rule;
    return {f.name + ".star", [base](std::uint64_t p, std::uint32_t) { return base(p, 1); }, true};
}

AdditiveFunction difference(const AdditiveFunction& f, const AdditiveFunction& g) {
    auto fr = f.rule;
    auto gr = g.rule;
    return {f.name + "-" + g.name,
            [fr, gr](std::uint64_t p, std::uint32_t a) { return fr(p, a) - gr(p, a); },
            f.strongly_additive && g.strongly_additive};
}

double eval(const AdditiveFunction& f, std::uint64_t m, const SpfTable& table) {
    Factorization fact = factorize(m, table);
    double sum = 0.0;
    for (auto [p, a] : fact.factors) sum += f.rule(p, a);
    return sum;
}

void KolmogorovParams::validate() const {
    if (!(A <= 0.0)) throw ParameterError("Kolmogorov parameter A must be <= 0");
    if (!(C >= 0.0)) throw ParameterError("Kolmogorov parameter C must be >= 0");
    if (!(mu >= 0.0) || !(nu >= 0.0)) throw ParameterError("Kolmogorov parameters mu, nu must be >= 0");
    if (!(mu + nu <= 1.0)) throw ParameterError("Kolmogorov parameters must satisfy mu + nu <= 1");
    if (mu > 0.0 && !(A < 0.0)) throw ParameterError("mu > 0 requires A < 0");
    if (nu > 0.0 && !(C > 0.0)) throw ParameterError("nu > 0 requires C > 0");
}

namespace {

// ln ln p threshold: primes below 16 are pinned to Q0 with value 0.
constexpr double kClassFloor = 16.0;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double q1_target(const KolmogorovParams& params, std::uint64_t k, double x) {
    if (params.A * params.mu == 0.0 || x < kClassFloor) return 0.0;
    double lx = std::log(x);
    return 2.0 * params.mu * x /
           (static_cast<double>(euler_phi(k)) * params.A * params.A * lx * std::log(lx));
}

double q2_target(const KolmogorovParams& params, std::uint64_t k, double x) {
    if (params.C * params.nu == 0.0 || x < kClassFloor) return 0.0;
    double lx = std::log(x);
    return 2.0 * params.nu * x /
           (static_cast<double>(euler_phi(k)) * params.C * params.C * lx * std::log(lx));
}

PrimeClassAssignment build_prime_classes(std::shared_ptr<const PrimeSet> primes,
                                         const KolmogorovParams& params, std::uint64_t k) {
    params.validate();
    if (!primes || primes->primes.empty()) throw EmptyRangeError("build_prime_classes requires a nonempty prime set");

    PrimeClassAssignment out;
    out.primes = std::move(primes);
    out.labels.assign(out.primes->primes.size(), PrimeClassAssignment::Q0);

    std::uint64_t c1 = 0, c2 = 0;
    for (std::size_t i = 0; i < out.primes->primes.size(); ++i) {
        auto p = static_cast<double>(out.primes->primes[i]);
        if (p < kClassFloor) continue;
        if (static_cast<double>(c1) < q1_target(params, k, p)) {
            out.labels[i] = PrimeClassAssignment::Q1;
            ++c1;
        } else if (static_cast<double>(c2) < q2_target(params, k, p)) {
            out.labels[i] = PrimeClassAssignment::Q2;
            ++c2;
        }
    }
    out.q1_count = c1;
    out.q2_count = c2;
    return out;
}

PrimeClassAssignment::Label PrimeClassAssignment::label_of(std::uint64_t p) const {
    const auto& v = primes->primes;
    auto it = std::lower_bound(v.begin(), v.end(), p);
    if (it == v.end() || *it != p) return Q0;
    return label_at(static_cast<std::size_t>(it - v.begin()));
}

AdditiveFunction kolmogorov_example_function(const KolmogorovParams& params,
                                             PrimeClassAssignment assignment) {
    params.validate();
    double coef = 2.0 * (1.0 + params.mu * sgn(params.A) - params.nu * sgn(params.C));
    if (coef < 0.0) {
        bool q0_nonempty = false;
        for (std::size_t i = 0; i < assignment.labels.size(); ++i)
            if (assignment.labels[i] == PrimeClassAssignment::Q0 &&
                static_cast<double>(assignment.primes->primes[i]) >= kClassFloor) {
                q0_nonempty = true;
                break;
            }
        if (q0_nonempty) throw ParameterError("negative radicand for Q0 values of the example function");
    }
    for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
        if (assignment.labels[i] == PrimeClassAssignment::Q1 && params.A == 0.0)
            throw ParameterError("Q1 labels require A != 0");
        if (assignment.labels[i] == PrimeClassAssignment::Q2 && params.C == 0.0)
            throw ParameterError("Q2 labels require C != 0");
    }

    auto shared = std::make_shared<PrimeClassAssignment>(std::move(assignment));
    KolmogorovParams ps = params;
    return {"kolmogorov_example",
            [shared, ps, coef](std::uint64_t p, std::uint32_t) {
                if (static_cast<double>(p) < kClassFloor) return 0.0;
                double llp = std::log(std::log(static_cast<double>(p)));
                switch (shared->label_of(p)) {
                    case PrimeClassAssignment::Q1:
                        return ps.A * llp;
                    case PrimeClassAssignment::Q2:
                        return ps.C * llp;
                    default:
                        return std::sqrt(coef * llp);
                }
            },
            true};
}

}  // namespace progmom

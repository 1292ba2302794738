#include "psifrac/psi_function.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace psifrac {

PsiFunction::PsiFunction(Kind kind, std::string label, std::function<double(double)> psi,
                         std::function<double(double)> prime)
    : kind_(kind), label_(std::move(label)), psi_(std::move(psi)), prime_(std::move(prime))
{
    psi0_ = psi_(0.0);
}

PsiFunction PsiFunction::identity()
{
    return PsiFunction(Kind::Identity, "identity",
                       [](double t) { return t; },
                       [](double) { return 1.0; });
}

PsiFunction PsiFunction::power(double rho)
{
    if (!(rho > 0.0))
        throw PsiValidationError("power preset requires rho > 0");
    std::ostringstream label;
    label << "power:" << rho;
    return PsiFunction(Kind::Power, label.str(),
                       [rho](double t) { return std::pow(t, rho); },
                       [rho](double t) { return rho * std::pow(t, rho - 1.0); });
}

PsiFunction PsiFunction::shifted_log()
{
    return PsiFunction(Kind::ShiftedLog, "shifted-log",
                       [](double t) { return std::log1p(t); },
                       [](double t) { return 1.0 / (1.0 + t); });
}

PsiFunction PsiFunction::custom(const Expr& psi_expr, const Expr& psi_prime_expr,
                                double T, int probe_points)
{
    if (!(T > 0.0))
        throw PsiValidationError("custom Psi: T must be positive");
    if (probe_points < 8)
        probe_points = 8;
    if (psi_expr.variables().size() != 1 || psi_expr.variables()[0] != "t" ||
        psi_prime_expr.variables().size() != 1 || psi_prime_expr.variables()[0] != "t")
        throw PsiValidationError("custom Psi: expressions must be in the variable \"t\" alone");

    auto psi = [e = psi_expr](double t) { return e.eval1(t); };
    auto prime = [e = psi_prime_expr](double t) { return e.eval1(t); };

    // Monotonicity and positivity on probe_points uniform samples of (0, T].
    double prev = psi(0.0);
    for (int k = 1; k <= probe_points; ++k) {
        const double t = T * static_cast<double>(k) / probe_points;
        double pv, dv;
        try {
            pv = psi(t);
            dv = prime(t);
        } catch (const EvalError& e) {
            std::ostringstream os;
            os << "custom Psi: evaluation failed at t = " << t << ": " << e.what();
            throw PsiValidationError(os.str());
        }
        if (!std::isfinite(pv) || !std::isfinite(dv)) {
            std::ostringstream os;
            os << "custom Psi: non-finite value at t = " << t;
            throw PsiValidationError(os.str());
        }
        if (!(dv > 0.0)) {
            std::ostringstream os;
            os << "custom Psi: psi_prime(t) = " << dv << " not positive at t = " << t;
            throw PsiValidationError(os.str());
        }
        if (!(pv > prev)) {
            std::ostringstream os;
            os << "custom Psi: monotonicity violation at t = " << t;
            throw PsiValidationError(os.str());
        }
        prev = pv;
    }

    // Cross-validate psi_prime against centered differences away from the
    // endpoints.
    const double h = 1e-5 * T;
    for (int k = 1; k < probe_points; ++k) {
        const double t = T * static_cast<double>(k) / probe_points;
        if (t - h <= 0.0 || t + h >= T)
            continue;
        const double fd = (psi(t + h) - psi(t - h)) / (2.0 * h);
        const double dv = prime(t);
        if (std::abs(dv - fd) > 1e-4 * std::abs(dv)) {
            std::ostringstream os;
            os << "custom Psi: psi_prime mismatch at t = " << t << " (declared " << dv
               << ", finite difference " << fd << ")";
            throw PsiValidationError(os.str());
        }
    }

    return PsiFunction(Kind::Custom, "custom:" + psi_expr.print(), std::move(psi),
                       std::move(prime));
}

PsiFunction PsiFunction::from_spec(const std::string& spec, double T)
{
    if (spec == "identity")
        return identity();
    if (spec == "shifted-log" || spec == "shifted_log")
        return shifted_log();
    if (spec.rfind("power:", 0) == 0) {
        const double rho = std::stod(spec.substr(6));
        return power(rho);
    }
    if (spec.rfind("custom:", 0) == 0) {
        const std::string body = spec.substr(7);
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos)
            throw PsiValidationError("custom Psi spec needs \"custom:PSI_EXPR,PSI_PRIME_EXPR\"");
        const Expr psi_e = Expr::parse(body.substr(0, comma), {"t"});
        const Expr prime_e = Expr::parse(body.substr(comma + 1), {"t"});
        return custom(psi_e, prime_e, T);
    }
    throw PsiValidationError("unknown Psi spec '" + spec + "'");
}

} // namespace psifrac

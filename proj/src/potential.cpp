#include "qpsc/potential.hpp"

#include "qpsc/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace qpsc {

namespace {

using cd = std::complex<double>;
constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_integer(double x) { return std::isfinite(x) && x == std::nearbyint(x); }

void require(bool ok, const char* what)
{
    if (!ok) throw std::invalid_argument(what);
}

/// Integral of e^{i a theta} over [0, 2*pi].
cd full_period_exponential(double a)
{
    if (a == 0.0) return two_pi;
    if (is_integer(a)) return 0.0;
    const double s = std::sin(std::numbers::pi * a);
    // (e^{2 pi i a} - 1) / (i a) = (sin(2 pi a) + i (1 - cos(2 pi a))) / a
    return cd(std::sin(two_pi * a), 2.0 * s * s) / a;
}

std::optional<cd> term_moment_closed(const PotentialTerm& t, int m)
{
    switch (t.kind) {
    case TermKind::Constant:
        return m == 0 ? cd(two_pi * t.amplitude) : cd(0.0);
    case TermKind::Cosine:
        return 0.5 * t.amplitude * (full_period_exponential(m + t.parameter) + full_period_exponential(m - t.parameter));
    case TermKind::SineGamma: {
        const double g = t.parameter;
        const double s = std::sin(std::numbers::pi * g);
        const double c = std::cos(std::numbers::pi * g);
        if (m == 0) return cd(2.0 * t.amplitude * s * s / g);
        if (m == 1 || m == -1) {
            if (g == 1.0) throw SingularParameter("sin(theta) moment at |m| = 1: gamma^2 - 1 vanishes");
            const double scale = 2.0 * t.amplitude * s / (g * g - 1.0);
            // m = -1 is I_1 (kernel e^{-i theta}), m = +1 is I_2
            return scale * cd(g * s, m == -1 ? -c : c);
        }
        return std::nullopt;
    }
    case TermKind::Monomial: {
        const int k = t.exponent();
        if (m == 0) return cd(t.amplitude * std::pow(two_pi, k + 1) / (k + 1));
        // J_k = ((2 pi)^k - k J_{k-1}) / (i m), J_0 = 0 for m != 0
        const cd im(0.0, static_cast<double>(m));
        cd j = 0.0;
        for (int p = 1; p <= k; ++p) j = (std::pow(two_pi, p) - static_cast<double>(p) * j) / im;
        return t.amplitude * j;
    }
    }
    return std::nullopt;
}

double term_value(const PotentialTerm& t, double theta)
{
    switch (t.kind) {
    case TermKind::Constant: return t.amplitude;
    case TermKind::Cosine: return t.amplitude * std::cos(t.parameter * theta);
    case TermKind::SineGamma: return t.amplitude * std::sin(t.parameter * theta);
    case TermKind::Monomial: return t.amplitude * std::pow(theta, t.exponent());
    }
    return 0.0;
}

}  // namespace

PotentialTerm PotentialTerm::constant(double amplitude)
{
    require(std::isfinite(amplitude), "amplitude must be finite");
    return {TermKind::Constant, amplitude, 0.0};
}

PotentialTerm PotentialTerm::cosine(double amplitude, double frequency)
{
    require(std::isfinite(amplitude), "amplitude must be finite");
    require(std::isfinite(frequency) && frequency > 0.0, "cosine frequency must be positive");
    return {TermKind::Cosine, amplitude, frequency};
}

PotentialTerm PotentialTerm::sine(double amplitude, double gamma)
{
    require(std::isfinite(amplitude), "amplitude must be finite");
    require(std::isfinite(gamma) && gamma > 0.0, "sine gamma must be positive");
    return {TermKind::SineGamma, amplitude, gamma};
}

PotentialTerm PotentialTerm::monomial(double amplitude, int exponent)
{
    require(std::isfinite(amplitude), "amplitude must be finite");
    require(exponent >= 0, "monomial exponent must be >= 0");
    return {TermKind::Monomial, amplitude, static_cast<double>(exponent)};
}

PotentialSpec::PotentialSpec(std::vector<PotentialTerm> terms) : terms_(std::move(terms))
{
    require(!terms_.empty(), "potential needs at least one term");
    for (const auto& t : terms_) {
        require(std::isfinite(t.amplitude), "amplitude must be finite");
        switch (t.kind) {
        case TermKind::Constant: break;
        case TermKind::Cosine:
        case TermKind::SineGamma: require(std::isfinite(t.parameter) && t.parameter > 0.0, "frequency must be positive"); break;
        case TermKind::Monomial: require(is_integer(t.parameter) && t.parameter >= 0.0, "exponent must be a nonnegative integer"); break;
        }
    }
}

bool PotentialSpec::periodic() const noexcept
{
    for (const auto& t : terms_) {
        switch (t.kind) {
        case TermKind::Constant: break;
        case TermKind::Cosine:
        case TermKind::SineGamma:
            if (!is_integer(t.parameter)) return false;
            break;
        case TermKind::Monomial:
            if (t.parameter != 0.0) return false;
            break;
        }
    }
    return true;
}

double evaluate(const PotentialSpec& spec, double theta)
{
    double v = 0.0;
    for (const auto& t : spec.terms()) v += term_value(t, theta);
    return v;
}

std::complex<double> angular_moment(const PotentialSpec& spec, int m, int quadrature_nodes)
{
    require(quadrature_nodes >= 1, "quadrature_nodes must be positive");
    const auto rule = spec.periodic() ? quadrature::periodic_trapezoid(quadrature_nodes)
                                      : quadrature::composite_gauss_legendre(quadrature_nodes, 0.0, two_pi);
    return rule.integrate([&](double theta) { return evaluate(spec, theta) * std::polar(1.0, m * theta); });
}

std::optional<std::complex<double>> angular_moment_closed(const PotentialSpec& spec, int m)
{
    cd sum = 0.0;
    for (const auto& t : spec.terms()) {
        const auto part = term_moment_closed(t, m);
        if (!part) return std::nullopt;
        sum += *part;
    }
    return sum;
}

std::complex<double> moment(const PotentialSpec& spec, int m)
{
    // term by term, so one term without a closed form does not force the rest onto quadrature
    cd sum = 0.0;
    for (const auto& t : spec.terms()) {
        std::optional<cd> closed;
        try {
            closed = term_moment_closed(t, m);
        } catch (const SingularParameter&) {
        }
        sum += closed ? *closed : angular_moment(PotentialSpec{t}, m);
    }
    return sum;
}

MomentTable::MomentTable(const PotentialSpec& spec, int max_order) : max_order_(max_order)
{
    require(max_order >= 0, "max_order must be >= 0");
    values_.reserve(2 * static_cast<std::size_t>(max_order) + 1);
    for (int m = -max_order; m <= max_order; ++m) values_.push_back(moment(spec, m));
}

std::complex<double> MomentTable::operator()(int m) const
{
    if (m < -max_order_ || m > max_order_) throw std::out_of_range("moment order outside table");
    return values_[static_cast<std::size_t>(m + max_order_)];
}

AdmissibilityReport admissibility(const PotentialSpec& spec, double imag_tol, double zero_tol)
{
    require(imag_tol > 0.0 && zero_tol > 0.0, "tolerances must be positive");
    AdmissibilityReport r;
    r.I1 = moment(spec, -1);
    r.I2 = moment(spec, +1);
    r.is_real = std::abs(r.I1.imag()) <= imag_tol && std::abs(r.I2.imag()) <= imag_tol;
    r.is_nonzero = std::abs(r.I1) > zero_tol && std::abs(r.I2) > zero_tol;
    r.admissible = r.is_real && r.is_nonzero;
    return r;
}

}  // namespace qpsc

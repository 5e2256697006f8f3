#pragma once

// Angular profile V(theta) of the z-linear perturbation beta * z * V(theta),
// its Fourier-type moments and the admissibility test on I_{-1}, I_{+1}.
//
// Moment convention: angular_moment(spec, m) integrates V(theta) e^{+i m theta}
// over [0, 2*pi]. With that kernel I_1 = moment(-1), I_2 = moment(+1) and
// I_0 = moment(0); the matrix element <i|V|j> needs moment(n_theta_j - n_theta_i).

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpsc {

enum class TermKind { Constant, Cosine, SineGamma, Monomial };

/// One term amplitude * {1, cos(w theta), sin(gamma theta), theta^k}.
/// `parameter` holds w, gamma or k respectively and is 0 for Constant.
struct PotentialTerm {
    TermKind kind;
    double amplitude;
    double parameter;

    static PotentialTerm constant(double amplitude);
    static PotentialTerm cosine(double amplitude, double frequency = 1.0);
    static PotentialTerm sine(double amplitude, double gamma);
    static PotentialTerm monomial(double amplitude, int exponent);

    int exponent() const { return static_cast<int>(parameter); }

    friend bool operator==(const PotentialTerm&, const PotentialTerm&) = default;
};

class PotentialSpec {
public:
    explicit PotentialSpec(std::vector<PotentialTerm> terms);
    PotentialSpec(std::initializer_list<PotentialTerm> terms) : PotentialSpec(std::vector<PotentialTerm>(terms)) {}

    const std::vector<PotentialTerm>& terms() const noexcept { return terms_; }

    /// True when every term is 2*pi-periodic (integer frequencies, theta^0).
    bool periodic() const noexcept;

    friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

private:
    std::vector<PotentialTerm> terms_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& expected);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Raised for sin(gamma theta) with gamma = 1 and |m| = 1, where the closed
/// form divides by gamma^2 - 1.
class SingularParameter : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Grammar (whitespace ignored):
///   expr   := term { ('+' | '-') term }
///   term   := NUMBER [ '*' factor ] | factor
///   factor := 'cos' '(' arg ')' | 'sin' '(' arg ')' | 'theta' [ '^' INT ]
///   arg    := 'theta' | NUMBER '*' 'theta'
/// NUMBER is a decimal literal with optional sign and exponent.
PotentialSpec parse_potential(std::string_view text);

/// Canonical text: terms in order, joined by " + ", amplitudes with 17
/// significant digits. parse_potential(format_potential(s)) == s.
std::string format_potential(const PotentialSpec& spec);

double evaluate(const PotentialSpec& spec, double theta);

inline constexpr int default_moment_nodes = 4096;

/// Numerical moment. Periodic specs use the periodic trapezoid rule; anything
/// else (theta^k, non-integer frequencies) uses composite Gauss-Legendre on
/// [0, 2*pi], because the trapezoid rule is only second order there.
std::complex<double> angular_moment(const PotentialSpec& spec, int m, int quadrature_nodes = default_moment_nodes);

/// Exact moment by elementary integration, or nullopt when some term has none
/// (sin(gamma theta) with |m| > 1).
std::optional<std::complex<double>> angular_moment_closed(const PotentialSpec& spec, int m);

/// Per term: closed form when available and not singular, quadrature otherwise.
std::complex<double> moment(const PotentialSpec& spec, int m);

/// moment(spec, m) for every |m| <= max_order, computed once.
class MomentTable {
public:
    MomentTable(const PotentialSpec& spec, int max_order);

    int max_order() const noexcept { return max_order_; }
    /// Throws std::out_of_range for |m| > max_order.
    std::complex<double> operator()(int m) const;

private:
    int max_order_;
    std::vector<std::complex<double>> values_;
};

struct AdmissibilityReport {
    std::complex<double> I1;
    std::complex<double> I2;
    bool is_real;
    bool is_nonzero;
    bool admissible;
};

AdmissibilityReport admissibility(const PotentialSpec& spec, double imag_tol = 1e-10, double zero_tol = 1e-10);

}  // namespace qpsc

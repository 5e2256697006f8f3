#include "qpsc/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qpsc {

using cd = std::complex<double>;

double ComplexMatrix::frobenius_norm() const
{
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
}

double ComplexMatrix::hermiticity_defect() const
{
    const double scale = max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst / scale;
}

cd ComplexMatrix::trace() const
{
    cd t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

namespace {

constexpr int max_sweeps = 100;
constexpr double off_diagonal_target = 1e-12;

Eigensystem jacobi(const ComplexMatrix& input, double tol, bool want_vectors)
{
    const double defect = input.hermiticity_defect();
    if (defect > tol) throw NotHermitian("matrix is not Hermitian (relative defect " + std::to_string(defect) + ")");

    const std::size_t n = input.size();
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = input(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }

    ComplexMatrix v(want_vectors ? n : 0);
    for (std::size_t i = 0; i < v.size(); ++i) v(i, i) = 1.0;

    const double norm = a.frobenius_norm();
    const double target = off_diagonal_target * norm;
    const double negligible = 1e-3 * target;

    for (int sweep = 0; sweep < max_sweeps && norm > 0.0; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off < target) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cd apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= negligible) continue;

                // D = diag(1, e^{-i phi}) makes the pivot real; then a real
                // rotation zeroes it. U = D * [[c, s], [-s, c]].
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * b);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cd e = std::conj(apq) / b;
                const cd u_pp = c, u_pq = s, u_qp = -s * e, u_qq = c * e;

                for (std::size_t k = 0; k < n; ++k) {
                    const cd akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * b;
                a(q, q) = aqq + t * b;

                for (std::size_t k = 0; k < v.size(); ++k) {
                    const cd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    Eigensystem out;
    out.values.reserve(n);
    for (std::size_t k : order) out.values.push_back(a(k, k).real());
    if (!want_vectors) return out;

    out.vectors = ComplexMatrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        double len = 0.0;
        std::size_t pivot = 0;
        for (std::size_t k = 0; k < n; ++k) {
            len += std::norm(v(k, src));
            if (std::abs(v(k, src)) > std::abs(v(pivot, src))) pivot = k;
        }
        const cd phase = std::conj(v(pivot, src)) / std::abs(v(pivot, src)) / std::sqrt(len);
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, src) * phase;
        out.vectors(pivot, col) = out.vectors(pivot, col).real();
    }
    return out;
}

}  // namespace

Eigensystem hermitian_eigensystem(const ComplexMatrix& a, double tol) { return jacobi(a, tol, true); }

std::vector<double> exact_eigenvalues(const ComplexMatrix& a, double tol) { return jacobi(a, tol, false).values; }

}  // namespace qpsc

#pragma once

// Numeric evaluation of the theta function, the Appell function kappa and
// their companions in multiplicative variables.
//
// Everything is parametrized by the half-nome u = q^{1/2}, so every
// half-integral power of q is an integral power of u and no square root is
// taken during evaluation:
//
//   theta(z)      = sum_n u^{n^2} z^n                     (= theta(z, q))
//   theta2(z)     = sum_n u^{2n^2} z^n                    (= theta(z, q^2))
//   kappa(a, z)   = sum_n u^{n^2} z^n / (u^{2n} - a)
//   kappa_bar     = theta(-a/u) * kappa(a, z)
//
// vartheta0/vartheta1 need q^{1/4} and therefore take the quarter nome v.

#include <complex>

#include "appell/errors.hpp"

namespace appell::num {

using cplx = std::complex<double>;

// Half-nome u = q^{1/2} with 0 < |u| < 1.
class Nome {
public:
    explicit Nome(cplx u);

    cplx u() const noexcept { return u_; }
    cplx q() const noexcept { return u_ * u_; }

private:
    cplx u_;
};

// Quarter nome v = q^{1/4}; the half-nome is v^2.
class QuarterNome {
public:
    explicit QuarterNome(cplx v);

    cplx v() const noexcept { return v_; }
    Nome half() const { return Nome{v_ * v_}; }

private:
    cplx v_;
};

struct TruncationPolicy {
    double eps_term = 1e-16;
    int n_max = 200;

    // Throws DomainError unless 0 < eps_term < 1 and n_max >= 8.
    void validate() const;
};

// Pole guard radius for kappa(a, .): 1e-8 * max(1, |a|).
double pole_guard(cplx a) noexcept;

cplx theta(cplx z, const Nome& u, const TruncationPolicy& pol = {});
cplx theta2(cplx z, const Nome& u, const TruncationPolicy& pol = {});

/// vartheta0(z) = theta(z^2, q^2) = sum_n q^{n^2} z^{2n}, with q = v^4.
cplx vartheta0(cplx z, const QuarterNome& v, const TruncationPolicy& pol = {});

/// vartheta1(z) = sum_n q^{(n+1/2)^2} z^{2n+1} = sum_n v^{(2n+1)^2} z^{2n+1}.
cplx vartheta1(cplx z, const QuarterNome& v, const TruncationPolicy& pol = {});

/// Appell function kappa(a, z, q). Throws PoleProximityError when a comes
/// within pole_guard(a) of u^{2n} for an index n visited by the sum.
cplx kappa(cplx a, cplx z, const Nome& u, const TruncationPolicy& pol = {});

cplx kappa_bar(cplx a, cplx z, const Nome& u, const TruncationPolicy& pol = {});

/// (x; q)_inf = prod_{k>=0} (1 - x q^k), truncated once |x q^k| < eps_term.
cplx qpochhammer(cplx x, cplx q, const TruncationPolicy& pol = {});

/// Term-wise z-derivative of theta: sum_n n u^{n^2} z^{n-1}.
cplx dtheta_dz(cplx z, const Nome& u, const TruncationPolicy& pol = {});

} // namespace appell::num

#pragma once

// The theta group Gamma_{1,2} = { ad - bc = 1, ac = bd = 0 mod 2 }, its
// characters zeta^2 and chi, the cocycle factor k_gamma and the
// divisibility of the kappa_0 modular defect by theta(x, tau).
//
// Additive variables: z = exp(2 pi i x), u = q^{1/2} = exp(pi i tau) and
// the 2-torsion parameter a = exp(pi i (tau + 1)) = -u.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "appell/kernel.hpp"

namespace appell::modular {

using cplx = std::complex<double>;
using num::TruncationPolicy;

class GammaElement {
public:
    // Throws DomainError unless the matrix lies in Gamma_{1,2}.
    GammaElement(long long a, long long b, long long c, long long d);

    static GammaElement identity() { return {1, 0, 0, 1}; }

    long long a() const noexcept { return a_; }
    long long b() const noexcept { return b_; }
    long long c() const noexcept { return c_; }
    long long d() const noexcept { return d_; }

    GammaElement inverse() const { return {d_, -b_, -c_, a_}; }

    friend GammaElement operator*(const GammaElement& l, const GammaElement& r);
    friend bool operator==(const GammaElement&, const GammaElement&) = default;

private:
    long long a_, b_, c_, d_;
};

bool in_gamma12(long long a, long long b, long long c, long long d) noexcept;

struct AdditivePoint {
    cplx x;
    cplx tau;
};

// Rejects Im tau <= 0.
void require_upper_half_plane(cplx tau);

cplx automorphy_factor(const GammaElement& g, cplx tau); // c tau + d
cplx mobius(const GammaElement& g, cplx tau);            // (a tau + b)/(c tau + d)

AdditivePoint act(const GammaElement& g, const AdditivePoint& p);

/// zeta(gamma)^2: (-1)^{(d-1)/2} for d odd, exp(-pi i c / 2) for c odd.
cplx zeta_sq(const GammaElement& g);

/// chi(gamma) = (-1)^{a/2} exp(pi i (ab + cd)/4) for a even,
///              (-1)^{c/2} exp(pi i (ab + cd)/4) for c even.
cplx chi(const GammaElement& g);

/// k_gamma = exp(3 pi i/4 (tau - gamma tau)) zeta^{-2} chi^{-1} (c tau + d).
cplx k_gamma(const GammaElement& g, cplx tau);

/// The half-nome exp(pi i tau); throws DomainError when |u| >= max_abs_u.
num::Nome nome_of(cplx tau, double max_abs_u = 0.99);

/// Inverse of nome_of on the principal branch: tau = -i log(u) / pi.
cplx tau_of(const num::Nome& u);

cplx theta_additive(cplx x, cplx tau, const TruncationPolicy& pol = {});

/// kappa((tau+1)/2, x, tau) = kappa(-u, exp(2 pi i x), u).
cplx kappa_half(cplx x, cplx tau, const TruncationPolicy& pol = {});

/// kappa_0(x, tau) = exp(3 pi i tau / 4) kappa((tau+1)/2, x, tau).
cplx kappa0(cplx x, cplx tau, const TruncationPolicy& pol = {});

struct ThetaZeroIndex {
    int m = 0;
    int n = 0;
};

/// x = (tau + 1)/2 + m + n tau, a zero of theta(., tau).
cplx theta_zero(cplx tau, ThetaZeroIndex index);

std::vector<ThetaZeroIndex> zero_grid(int radius);

/// Smallest Im tau accepted for both tau and gamma tau by the divisibility
/// check (|u| <= exp(-0.1 pi) ~ 0.73).
inline constexpr double min_im_tau = 0.1;

/// The modular defect
///   D(x) = kappa0(x/(c tau + d), gamma tau)
///        - zeta^{-2} chi^{-1} (c tau + d) exp(pi i (1/(c tau + d) - 1) x) kappa0(x, tau).
cplx modular_defect(const GammaElement& g, cplx x, cplx tau, const TruncationPolicy& pol = {});

struct DivisibilityRecord {
    ThetaZeroIndex zero;
    cplx x;
    cplx defect;
    double residual = 0.0; // |D| / max(|kappa0 terms|, 1)
};

/// Defect at each listed theta zero. Throws DomainError when Im tau or
/// Im gamma tau is below min_im_tau.
std::vector<DivisibilityRecord> divisibility_records(const GammaElement& g, cplx tau,
                                                     std::span<const ThetaZeroIndex> zeros,
                                                     const TruncationPolicy& pol = {});

double divisibility_residual(const GammaElement& g, cplx tau, std::span<const ThetaZeroIndex> zeros,
                             const TruncationPolicy& pol = {});

/// The holomorphic quotient phi_gamma in
///   kappa(gamma side) = k_gamma exp(pi i (1/(c tau+d) - 1) x) kappa(tau side) + phi_gamma theta(x, tau),
/// evaluated away from the zeros of theta (|theta| > 1e-6 theta-scale).
cplx phi_gamma(const GammaElement& g, cplx x, cplx tau, const TruncationPolicy& pol = {});

/// Residual of the relation above with phi_gamma substituted, relative to
/// max(|lhs|, |rhs|, 1).
double div_relation_residual(const GammaElement& g, cplx x, cplx tau, cplx phi, const TruncationPolicy& pol = {});

struct QuasiResult {
    double rel_residual = 0.0;
    cplx lhs;
    cplx rhs;
};

/// Worst relative residual of kappa((tau+1)/2, x0 + m + n tau) against
/// exp(pi i n (tau + 1)) kappa((tau+1)/2, x0) at the zero x0 = (tau+1)/2,
/// over |m|, |n| <= radius.
QuasiResult quasi_periodicity(cplx tau, int radius, const TruncationPolicy& pol = {});

/// [[1,2],[0,1]] and [[1,0],[2,1]].
std::span<const GammaElement> generators();

/// [[1,2],[0,1]], [[0,-1],[1,0]], [[1,0],[2,1]] and -I; together they
/// generate Gamma_{1,2} and exercise both branches of zeta^2 and chi.
std::span<const GammaElement> theta_group_generators();

/// Random products of length 1..max_length in generators() and their
/// inverses. When taus is nonempty, words with Im(gamma tau) < min_im_tau
/// for some listed tau are discarded and redrawn.
std::vector<GammaElement> random_words(int count, int max_length, std::uint64_t seed,
                                       std::span<const cplx> taus = {});

} // namespace appell::modular

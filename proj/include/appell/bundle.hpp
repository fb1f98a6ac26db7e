#pragma once

// Vector bundles V_r(A) = C^* x C^r / (z, v) ~ (qz, A(z) v) on E_q, given by
// their factors of automorphy. Sections are r-vectors with v(qz) = A(z) v(z);
// an isomorphism V(A) -> V(A') is a gauge matrix with A'(z) B(z) = B(qz) A(z).

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "appell/identities.hpp"
#include "appell/kernel.hpp"

namespace appell::bundle {

using cplx = std::complex<double>;
using num::Nome;
using num::TruncationPolicy;

class FactorOfAutomorphy {
public:
    using Evaluator = std::function<Eigen::MatrixXcd(cplx)>;

    FactorOfAutomorphy(int rank, Nome nome, Evaluator eval, std::string label);

    int rank() const noexcept { return rank_; }
    const Nome& nome() const noexcept { return nome_; }
    const std::string& label() const noexcept { return label_; }
    Eigen::MatrixXcd operator()(cplx z) const;

private:
    int rank_;
    Nome nome_;
    Evaluator eval_;
    std::string label_;
};

struct SectionCandidate {
    int rank = 0;
    std::function<Eigen::VectorXcd(cplx)> eval;
};

class GaugeMatrix {
public:
    using Evaluator = std::function<Eigen::Matrix2cd(cplx)>;

    GaugeMatrix(Evaluator eval, std::string source, std::string target);

    Eigen::Matrix2cd operator()(cplx z) const { return eval_(z); }
    const std::string& source() const noexcept { return source_; }
    const std::string& target() const noexcept { return target_; }

private:
    Evaluator eval_;
    std::string source_;
    std::string target_;
};

// L = V_1(u^{-1} z^{-1}).
FactorOfAutomorphy make_L(const Nome& u);
// P_a = V_1(a).
FactorOfAutomorphy make_Pa(cplx a, const Nome& u);
// F_a = V_2([[a, 1], [0, u^{-1} z^{-1}]]).
FactorOfAutomorphy make_Fa(cplx a, const Nome& u);
// F'_a = V_2([[1, 1], [0, u^{-1} a z^{-1}]]).
FactorOfAutomorphy make_Fpa(cplx a, const Nome& u);
// pi_* L' = V_2([[0, -u^{-1} z^{-1}], [1, 0]]).
FactorOfAutomorphy make_push(const Nome& u);

/// V_1(phi) (x) V_r(A) = V_r(phi A). Throws std::invalid_argument if phi is
/// not of rank 1 or the nomes differ.
FactorOfAutomorphy tensor(const FactorOfAutomorphy& phi, const FactorOfAutomorphy& A);

/// max over points of |v(qz) - A(z) v(z)| / max(|v(qz)|, |A(z) v(z)|, 1),
/// entrywise max norm. Throws std::invalid_argument on rank mismatch.
double check_section(const FactorOfAutomorphy& A, const SectionCandidate& v, std::span<const cplx> points);

/// max over points of the relative residual of B(qz) A_source(z) - A_target(z) B(z).
double gauge_residual(const GaugeMatrix& B, const FactorOfAutomorphy& source, const FactorOfAutomorphy& target,
                      std::span<const cplx> points);

/// (max |det B(z) - det B(z_0)|) / |det B(z_0)| over the points.
double det_spread(const GaugeMatrix& B, std::span<const cplx> points);

// ---- explicit isomorphisms --------------------------------------------------

/// c_a = theta(1)^2 theta(-1)^2 theta(u)^2 / (4 a theta(-a/u) theta(-u a)).
cplx c_a(cplx a, const Nome& u, const TruncationPolicy& pol = {});

/// The gauge F'_a -> F_a:
///   [[kappa_a(z), (c_a - a^{-1} kappa_a(z) kappa_{1/a}(z)) / theta(z)],
///    [theta(z),   -a^{-1} kappa_{1/a}(z)]].
/// det B = -c_a. Throws DomainError when a or 1/a is within 1e-3 of q^Z.
GaugeMatrix build_B(cplx a, const Nome& u, const TruncationPolicy& pol = {});

/// lambda = theta(1, q^2) theta(q, q^2) / theta(u, q).
cplx lambda_C(const Nome& u, const TruncationPolicy& pol = {});

/// c = lambda theta(1) theta(-1).
cplx c_C(const Nome& u, const TruncationPolicy& pol = {});

/// The gauge pi_* L' -> F'_1:
///   [[lambda (theta(1)theta(-1)/2 - kappa_{-1}(-z)) / theta(-u z, q^2),
///     lambda (theta(1)theta(-1)/2 + kappa_{-1}(-z)) / theta(-z/u, q^2)],
///    [theta(-z/u, q^2), -theta(-u z, q^2)]].
/// det C = -c.
GaugeMatrix build_C(const Nome& u, const TruncationPolicy& pol = {});

struct BezoutPair {
    std::function<cplx(cplx)> phi1;
    std::function<cplx(cplx)> phi2;
};

/// phi1(z) theta(z, q^2) - phi2(z) theta(qz, q^2) = 1, read off from
/// det C = -c under the substitution z -> -u z:
///   phi1(z) = C_12(-u z) / c,  phi2(z) = -C_11(-u z) / c.
BezoutPair bezout_pair(const Nome& u, const TruncationPolicy& pol = {});

/// |phi1 theta(z,q^2) - phi2 theta(qz,q^2) - 1| maximized over points.
double bezout_residual(const BezoutPair& p, const Nome& u, std::span<const cplx> points,
                       const TruncationPolicy& pol = {});

struct BasisSections {
    SectionCandidate v0;
    SectionCandidate v1;
    SectionCandidate vm1;
};

/// The basis of H^0(L (x) F_a):
///   v0 = [theta(z/a), 0], v1 = [theta(z) kappa(a,z), theta(z)^2],
///   v-1 = [theta(-z) kappa(-a,-z), -theta(-z)^2].
BasisSections basis_sections(cplx a, const Nome& u, const TruncationPolicy& pol = {});

/// lambda_b = theta(u/b) theta(u b) / theta(u)^2.
cplx lambda_b(cplx b, const Nome& u, const TruncationPolicy& pol = {});

/// nu_{a,b} = theta(1) theta(ub) theta(-ub) theta(-u/b) theta(b) theta(ab)
///          / (2 theta(u) theta(-u/a) theta(ab/u) theta(-a b^2)).
cplx nu_ab(cplx a, cplx b, const Nome& u, const TruncationPolicy& pol = {});

struct MuExpansionResult {
    num::ResidualReport worst; // worst component over all points
    double first_row = 0.0;    // max relative residual of the kappa row
    double second_row = 0.0;   // max relative residual of the theta^2 row
};

/// Compares b^{-1} mu_{a,b}(theta(z/b) (x) [kappa(a,bz), theta(bz)]) =
///   [b^{-1} theta(z/b) kappa(a, bz), theta(z/b) theta(bz)]
/// with lambda_b v1(ab) - lambda_{-b} v-1(ab) + (nu_{a,b} - nu_{a,-b}) v0(ab),
/// componentwise, at every point.
MuExpansionResult mu_expansion_residual(cplx a, cplx b, const Nome& u, std::span<const cplx> points,
                                        const TruncationPolicy& pol = {});

/// Guard distance for mu_expansion_residual: every kappa first argument
/// (a, ab, -ab) away from q^Z and every theta denominator away from -u q^Z.
double mu_guard_distance(cplx a, cplx b, const Nome& u);

/// Relative distance of z from the set +-u q^Z. The zeros of theta(z) are
/// -u q^Z (denominator of B_12); the zeros of the denominators of C_11 and
/// C_12 are u q^Z.
double singular_distance(cplx z, const Nome& u);

/// Relative distance of z from -q^Z, where the denominators theta(z, q^2)
/// and theta(qz, q^2) of the Bezout pair vanish.
double bezout_singular_distance(cplx z, const Nome& u);

using DistanceFn = std::function<double(cplx)>;

/// Deterministic points with |z| log-uniform in [r_min, r_max] and uniform
/// argument, redrawn until distance(z) >= min_dist.
std::vector<cplx> sample_z(const DistanceFn& distance, int count, std::uint64_t seed, double r_min = 0.5,
                           double r_max = 2.0, double min_dist = 1e-3);

/// count equally spaced points on |z| = radius, skipping those with
/// distance(z) < min_dist.
std::vector<cplx> circle_points(const DistanceFn& distance, double radius, int count, double min_dist = 1e-3);

} // namespace appell::bundle

#include "appell/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace appell::bundle {

namespace {

double max_abs(const Eigen::MatrixXcd& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double rel_residual(const Eigen::MatrixXcd& l, const Eigen::MatrixXcd& r)
{
    return max_abs(l - r) / std::max({max_abs(l), max_abs(r), 1.0});
}

double rel_residual(cplx l, cplx r)
{
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1.0});
}

void require_guard(cplx a, const Nome& u, const char* what)
{
    if (num::lattice_distance(a, 1.0, u.q()) < 1e-3) {
        throw DomainError(std::string(what) + " is too close to q^Z");
    }
}

Eigen::MatrixXcd mat1(cplx x)
{
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = x;
    return m;
}

Eigen::MatrixXcd mat2(cplx a, cplx b, cplx c, cplx d)
{
    Eigen::MatrixXcd m(2, 2);
    m << a, b, c, d;
    return m;
}

Eigen::VectorXcd vec2(cplx a, cplx b)
{
    Eigen::VectorXcd v(2);
    v << a, b;
    return v;
}

} // namespace

FactorOfAutomorphy::FactorOfAutomorphy(int rank, Nome nome, Evaluator eval, std::string label)
    : rank_(rank), nome_(nome), eval_(std::move(eval)), label_(std::move(label))
{
}

Eigen::MatrixXcd FactorOfAutomorphy::operator()(cplx z) const
{
    return eval_(z);
}

GaugeMatrix::GaugeMatrix(Evaluator eval, std::string source, std::string target)
    : eval_(std::move(eval)), source_(std::move(source)), target_(std::move(target))
{
}

FactorOfAutomorphy make_L(const Nome& u)
{
    const cplx uu = u.u();
    return {1, u, [uu](cplx z) { return mat1(1.0 / (uu * z)); }, "L"};
}

FactorOfAutomorphy make_Pa(cplx a, const Nome& u)
{
    return {1, u, [a](cplx) { return mat1(a); }, "P_a"};
}

FactorOfAutomorphy make_Fa(cplx a, const Nome& u)
{
    const cplx uu = u.u();
    return {2, u, [a, uu](cplx z) { return mat2(a, 1.0, 0.0, 1.0 / (uu * z)); }, "F_a"};
}

FactorOfAutomorphy make_Fpa(cplx a, const Nome& u)
{
    const cplx uu = u.u();
    return {2, u, [a, uu](cplx z) { return mat2(1.0, 1.0, 0.0, a / (uu * z)); }, "F'_a"};
}

FactorOfAutomorphy make_push(const Nome& u)
{
    const cplx uu = u.u();
    return {2, u, [uu](cplx z) { return mat2(0.0, -1.0 / (uu * z), 1.0, 0.0); }, "pi_*L'"};
}

FactorOfAutomorphy tensor(const FactorOfAutomorphy& phi, const FactorOfAutomorphy& A)
{
    if (phi.rank() != 1) {
        throw std::invalid_argument("tensor: first factor must be a line bundle");
    }
    if (phi.nome().u() != A.nome().u()) {
        throw std::invalid_argument("tensor: factors live on different curves");
    }
    return {A.rank(), A.nome(), [phi, A](cplx z) { return Eigen::MatrixXcd(phi(z)(0, 0) * A(z)); },
            phi.label() + "*" + A.label()};
}

double check_section(const FactorOfAutomorphy& A, const SectionCandidate& v, std::span<const cplx> points)
{
    if (A.rank() != v.rank) {
        throw std::invalid_argument("check_section: rank mismatch");
    }
    const cplx q = A.nome().q();
    double worst = 0.0;
    for (cplx z : points) {
        worst = std::max(worst, rel_residual(v.eval(q * z), A(z) * v.eval(z)));
    }
    return worst;
}

double gauge_residual(const GaugeMatrix& B, const FactorOfAutomorphy& source, const FactorOfAutomorphy& target,
                      std::span<const cplx> points)
{
    const cplx q = source.nome().q();
    double worst = 0.0;
    for (cplx z : points) {
        const Eigen::MatrixXcd lhs = B(q * z) * source(z);
        const Eigen::MatrixXcd rhs = target(z) * B(z);
        worst = std::max(worst, rel_residual(lhs, rhs));
    }
    return worst;
}

double det_spread(const GaugeMatrix& B, std::span<const cplx> points)
{
    if (points.empty()) {
        return 0.0;
    }
    const cplx d0 = B(points.front()).determinant();
    double worst = 0.0;
    for (cplx z : points) {
        worst = std::max(worst, std::abs(B(z).determinant() - d0));
    }
    return worst / std::abs(d0);
}

cplx c_a(cplx a, const Nome& u, const TruncationPolicy& pol)
{
    const auto T = [&](cplx x) { return num::theta(x, u, pol); };
    const cplx t1 = T(1.0), tm = T(-1.0), th = T(u.u());
    return t1 * t1 * tm * tm * th * th / (4.0 * a * T(-a / u.u()) * T(-u.u() * a));
}

GaugeMatrix build_B(cplx a, const Nome& u, const TruncationPolicy& pol)
{
    require_guard(a, u, "a");
    require_guard(1.0 / a, u, "1/a");
    const cplx c = c_a(a, u, pol);
    auto eval = [a, u, pol, c](cplx z) {
        const cplx ka = num::kappa(a, z, u, pol);
        const cplx kb = num::kappa(1.0 / a, z, u, pol);
        const cplx th = num::theta(z, u, pol);
        Eigen::Matrix2cd m;
        m << ka, (c - ka * kb / a) / th, th, -kb / a;
        return m;
    };
    return {eval, "F'_a", "F_a"};
}

cplx lambda_C(const Nome& u, const TruncationPolicy& pol)
{
    return num::theta2(1.0, u, pol) * num::theta2(u.q(), u, pol) / num::theta(u.u(), u, pol);
}

cplx c_C(const Nome& u, const TruncationPolicy& pol)
{
    return lambda_C(u, pol) * num::theta(1.0, u, pol) * num::theta(-1.0, u, pol);
}

GaugeMatrix build_C(const Nome& u, const TruncationPolicy& pol)
{
    const cplx lam = lambda_C(u, pol);
    const cplx half = num::theta(1.0, u, pol) * num::theta(-1.0, u, pol) / 2.0;
    auto eval = [u, pol, lam, half](cplx z) {
        const cplx uu = u.u();
        const cplx c21 = num::theta2(-z / uu, u, pol);
        const cplx c21q = num::theta2(-uu * z, u, pol); // c21(qz)
        const cplx k = num::kappa(-1.0, -z, u, pol);
        Eigen::Matrix2cd m;
        m << lam * (half - k) / c21q, lam * (half + k) / c21, c21, -c21q;
        return m;
    };
    return {eval, "pi_*L'", "F'_1"};
}

BezoutPair bezout_pair(const Nome& u, const TruncationPolicy& pol)
{
    const GaugeMatrix C = build_C(u, pol);
    const cplx c = c_C(u, pol);
    const cplx uu = u.u();
    return {[C, c, uu](cplx z) { return C(-uu * z)(0, 1) / c; },
            [C, c, uu](cplx z) { return -C(-uu * z)(0, 0) / c; }};
}

double bezout_residual(const BezoutPair& p, const Nome& u, std::span<const cplx> points, const TruncationPolicy& pol)
{
    double worst = 0.0;
    for (cplx z : points) {
        const cplx lhs = p.phi1(z) * num::theta2(z, u, pol) - p.phi2(z) * num::theta2(u.q() * z, u, pol);
        worst = std::max(worst, std::abs(lhs - 1.0));
    }
    return worst;
}

BasisSections basis_sections(cplx a, const Nome& u, const TruncationPolicy& pol)
{
    require_guard(a, u, "a");
    require_guard(-a, u, "-a");
    const auto T = [u, pol](cplx x) { return num::theta(x, u, pol); };
    return {
        {2, [T, a](cplx z) { return vec2(T(z / a), 0.0); }},
        {2,
         [T, a, u, pol](cplx z) {
             const cplx t = T(z);
             return vec2(t * num::kappa(a, z, u, pol), t * t);
         }},
        {2,
         [T, a, u, pol](cplx z) {
             const cplx t = T(-z);
             return vec2(t * num::kappa(-a, -z, u, pol), -t * t);
         }},
    };
}

cplx lambda_b(cplx b, const Nome& u, const TruncationPolicy& pol)
{
    const cplx uu = u.u();
    const cplx th = num::theta(uu, u, pol);
    return num::theta(uu / b, u, pol) * num::theta(uu * b, u, pol) / (th * th);
}

cplx nu_ab(cplx a, cplx b, const Nome& u, const TruncationPolicy& pol)
{
    const cplx uu = u.u();
    const auto T = [&](cplx x) { return num::theta(x, u, pol); };
    return T(1.0) * T(uu * b) * T(-uu * b) * T(-uu / b) * T(b) * T(a * b) /
           (2.0 * T(uu) * T(-uu / a) * T(a * b / uu) * T(-a * b * b));
}

double mu_guard_distance(cplx a, cplx b, const Nome& u)
{
    const cplx uu = u.u();
    const cplx q = u.q();
    double best = std::numeric_limits<double>::infinity();
    for (cplx k : {a, a * b, -a * b}) {
        best = std::min(best, num::lattice_distance(k, 1.0, q));
    }
    for (cplx w : {-uu / a, a * b / uu, -a * b / uu, -a * b * b}) {
        best = std::min(best, num::lattice_distance(w, -uu, q));
    }
    return best;
}

MuExpansionResult mu_expansion_residual(cplx a, cplx b, const Nome& u, std::span<const cplx> points,
                                        const TruncationPolicy& pol)
{
    const cplx ab = a * b;
    const BasisSections basis = basis_sections(ab, u, pol);
    const cplx lb = lambda_b(b, u, pol);
    const cplx lmb = lambda_b(-b, u, pol);
    const cplx nu = nu_ab(a, b, u, pol) - nu_ab(a, -b, u, pol);

    MuExpansionResult out;
    double worst = -1.0;
    for (cplx z : points) {
        const cplx tb = num::theta(z / b, u, pol);
        const Eigen::VectorXcd lhs = vec2(tb * num::kappa(a, b * z, u, pol) / b, tb * num::theta(b * z, u, pol));
        const Eigen::VectorXcd rhs = lb * basis.v1.eval(z) - lmb * basis.vm1.eval(z) + nu * basis.v0.eval(z);
        for (int row = 0; row < 2; ++row) {
            const double r = rel_residual(lhs(row), rhs(row));
            double& row_worst = row == 0 ? out.first_row : out.second_row;
            row_worst = std::max(row_worst, r);
            if (r > worst) {
                worst = r;
                num::EvalPoint p;
                p.z = z;
                p.a = a;
                p.b = b;
                out.worst = num::make_report("MU_EXPANSION", p, u, lhs(row), rhs(row));
            }
        }
    }
    return out;
}

double singular_distance(cplx z, const Nome& u)
{
    return std::min(num::lattice_distance(z, -u.u(), u.q()), num::lattice_distance(z, u.u(), u.q()));
}

double bezout_singular_distance(cplx z, const Nome& u)
{
    return num::lattice_distance(z, -1.0, u.q());
}

std::vector<cplx> sample_z(const DistanceFn& distance, int count, std::uint64_t seed, double r_min, double r_max,
                           double min_dist)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lmin = std::log(r_min), lmax = std::log(r_max);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < count) {
        const cplx z = std::polar(std::exp(lmin + (lmax - lmin) * unit(rng)), 2.0 * std::numbers::pi * unit(rng));
        if (distance(z) >= min_dist) {
            out.push_back(z);
        }
    }
    return out;
}

std::vector<cplx> circle_points(const DistanceFn& distance, double radius, int count, double min_dist)
{
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k) {
        // Offset keeps the grid off the real axis, where the singular sets of
        // real nomes lie.
        const cplx z = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.37) / count);
        if (distance(z) >= min_dist) {
            out.push_back(z);
        }
    }
    return out;
}

} // namespace appell::bundle

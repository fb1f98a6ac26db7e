#include "appell/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "appell/modular.hpp"

namespace appell::num {

namespace {

struct Entry {
    IdentityId id;
    std::string_view name;
};

constexpr std::array<Entry, 25> registry{{
    {IdentityId::DEF, "DEF"},
    {IdentityId::INV, "INV"},
    {IdentityId::DEF2, "DEF2"},
    {IdentityId::SYM, "SYM"},
    {IdentityId::SQRT, "SQRT"},
    {IdentityId::ADDF, "ADDF"},
    {IdentityId::HADD, "HADD"},
    {IdentityId::SP1, "SP1"},
    {IdentityId::HADD2, "HADD2"},
    {IdentityId::HADD3, "HADD3"},
    {IdentityId::SP2, "SP2"},
    {IdentityId::SP3, "SP3"},
    {IdentityId::SP4, "SP4"},
    {IdentityId::SP5, "SP5"},
    {IdentityId::HALFSER_P, "HALFSER_P"},
    {IdentityId::HALFSER_M, "HALFSER_M"},
    {IdentityId::ID4, "ID4"},
    {IdentityId::ID5SUM, "ID5SUM"},
    {IdentityId::ID5PROD, "ID5PROD"},
    {IdentityId::ID55, "ID55"},
    {IdentityId::ID6, "ID6"},
    {IdentityId::FOR1, "FOR1"},
    {IdentityId::FOR2, "FOR2"},
    {IdentityId::JAC, "JAC"},
    {IdentityId::QUASI, "QUASI"},
}};

constexpr std::array<IdentityId, 25> ids = [] {
    std::array<IdentityId, 25> out{};
    for (std::size_t i = 0; i < registry.size(); ++i) {
        out[i] = registry[i].id;
    }
    return out;
}();

double rel(cplx lhs, cplx rhs)
{
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

// Tracks the worst of several equalities making up one identity.
struct Worst {
    cplx lhs;
    cplx rhs;
    double r = -1.0;

    void add(cplx l, cplx h)
    {
        const double x = rel(l, h);
        if (x > r) {
            lhs = l;
            rhs = h;
            r = x;
        }
    }
};

void require_nonzero(std::initializer_list<cplx> values)
{
    for (cplx v : values) {
        if (v == cplx{}) {
            throw DomainError("identity bindings must be nonzero");
        }
    }
}

QuarterNome quarter_nome(const EvalPoint& p, const Nome& u)
{
    if (!p.v) {
        throw DomainError("identity requires the quarter-nome binding v with v^2 = u");
    }
    const QuarterNome v{*p.v};
    if (std::abs(*p.v * *p.v - u.u()) > 1e-12 * std::abs(u.u())) {
        throw DomainError("binding v does not satisfy v^2 = u");
    }
    return v;
}

// kappa(u, z) and kappa(-u, z) from their one-sided series
//   sum_{n>=0} u^{n^2+2n} / (1 - sign u^{2n+1}) (z^{-n} - sign z^{n+1}).
cplx half_series(double sign, cplx z, const Nome& nome, const TruncationPolicy& pol)
{
    const cplx u = nome.u();
    const double zmax = std::max(std::abs(z), 1.0 / std::abs(z));
    cplx sum{};
    double scale = 0.0;
    for (int n = 0; n < pol.n_max; ++n) {
        const cplx num = std::pow(u, n * n + 2 * n);
        const cplx den = 1.0 - sign * std::pow(u, 2 * n + 1);
        const cplx term = num / den * (std::pow(z, -n) - sign * std::pow(z, n + 1));
        const bool past_peak = std::pow(std::abs(u), 2 * n + 1) * zmax < 1.0;
        if (n > 0 && past_peak && std::abs(term) < pol.eps_term * scale) {
            return sum;
        }
        sum += term;
        scale += std::abs(term);
    }
    throw ConvergenceError("half-nome series did not converge within n_max terms");
}

struct Guards {
    std::vector<cplx> kappa_args;  // must avoid q^Z
    std::vector<cplx> theta_dens;  // must avoid the zeros -u q^Z of theta
};

Guards guards_for(IdentityId id, const EvalPoint& p, const Nome& nome)
{
    const cplx u = nome.u();
    const cplx q = nome.q();
    const cplx a = p.a, b = p.b, z = p.z;
    switch (id) {
    case IdentityId::DEF:
        return {{a}, {}};
    case IdentityId::INV:
        return {{a, 1.0 / a}, {}};
    case IdentityId::DEF2:
        return {{a, q * a}, {}};
    case IdentityId::SYM:
        return {{a, -u * z}, {}};
    case IdentityId::SQRT: {
        const cplx v = p.v.value_or(std::sqrt(u));
        return {{a * z, p.s / v, v * p.s, -p.s / v, -v * p.s}, {}};
    }
    case IdentityId::HADD:
        return {{a, a * b}, {-a / u}};
    case IdentityId::SP1:
        return {{a}, {-a / u}};
    case IdentityId::HADD2:
        return {{a, a * b}, {-a / u, -a * b / u}};
    case IdentityId::HADD3:
        return {{a}, {a * z / u, -a / u}};
    case IdentityId::ID4:
    case IdentityId::ID5SUM:
        return {{u / b}, {-b}};
    case IdentityId::ID5PROD:
    case IdentityId::ID6:
        return {{u / b}, {}};
    case IdentityId::ID55:
        return {{a, -a}, {u / a, -u / a}};
    default:
        return {};
    }
}

} // namespace

std::span<const IdentityId> all_identities() noexcept
{
    return ids;
}

std::string_view to_string(IdentityId id) noexcept
{
    for (const auto& e : registry) {
        if (e.id == id) {
            return e.name;
        }
    }
    return "?";
}

std::optional<IdentityId> find_identity(std::string_view name) noexcept
{
    for (const auto& e : registry) {
        if (e.name == name) {
            return e.id;
        }
    }
    return std::nullopt;
}

IdentityId parse_identity(std::string_view name)
{
    if (auto id = find_identity(name)) {
        return *id;
    }
    throw std::invalid_argument("unknown identity id: " + std::string(name));
}

ResidualReport make_report(std::string_view id, const EvalPoint& point, const Nome& u, cplx lhs, cplx rhs)
{
    ResidualReport r;
    r.identity_id = std::string(id);
    r.point = point;
    r.u = u.u();
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    r.scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    r.rel_residual = r.abs_residual / r.scale;
    return r;
}

ResidualReport identity_residual(IdentityId id, const EvalPoint& p, const Nome& nome, const TruncationPolicy& pol)
{
    require_nonzero({p.z, p.a, p.b, p.s});
    const cplx u = nome.u();
    const cplx q = nome.q();
    const cplx a = p.a, b = p.b, z = p.z;

    const auto T = [&](cplx x) { return theta(x, nome, pol); };
    const auto K = [&](cplx aa, cplx x) { return kappa(aa, x, nome, pol); };
    const auto KB = [&](cplx aa, cplx x) { return kappa_bar(aa, x, nome, pol); };
    const auto P = [&](cplx x) { return qpochhammer(x, q, pol); };

    Worst w;
    switch (id) {
    case IdentityId::DEF:
        w.add(K(a, q * z), a * K(a, z) + T(z));
        break;
    case IdentityId::INV:
        w.add(K(a, z), -K(1.0 / a, q / z) / a);
        break;
    case IdentityId::DEF2: {
        const cplx lhs = K(q * a, z);
        w.add(lhs, z * K(a, q * z) / u);
        w.add(lhs, a * z * K(a, z) / u + z * T(z) / u);
        break;
    }
    case IdentityId::SYM:
        w.add(a * KB(a, z), -u * z * KB(-u * z, -a / u));
        break;
    case IdentityId::SQRT: {
        const QuarterNome vn = quarter_nome(p, nome);
        const cplx v = vn.v();
        const cplx i{0.0, 1.0};
        if (std::abs(p.s * p.s - a) > 1e-12 * std::abs(a)) {
            throw DomainError("SQRT requires the binding s with s^2 = a");
        }
        const cplx lhs = KB(a * z, 1.0 / z);
        for (cplx s : {p.s, -p.s}) {
            const cplx rhs = vartheta0(i * v * s * z, vn, pol) / vartheta0(i, vn, pol) * KB(s / v, v * s) +
                             vartheta1(i * v * s * z, vn, pol) / vartheta1(i * u, vn, pol) * KB(v * s, s / v);
            w.add(lhs, rhs);
        }
        break;
    }
    case IdentityId::ADDF: {
        const QuarterNome vn = quarter_nome(p, nome);
        w.add(T(z * a) * T(z / a),
              vartheta0(a, vn, pol) * vartheta0(z, vn, pol) + vartheta1(a, vn, pol) * vartheta1(z, vn, pol));
        break;
    }
    case IdentityId::HADD:
        w.add(T(b * z) * K(a * b, z) - T(z) * K(a, b * z) / b, T(-u * b) * T(z / a) / T(-a / u) * K(a * b, -u));
        break;
    case IdentityId::SP1:
        w.add(K(a, -u), T(1.0) * T(-1.0) * T(u) / (2.0 * T(-a / u)));
        break;
    case IdentityId::HADD2:
        w.add(T(b * z) * K(a * b, z) - T(z) * K(a, b * z) / b,
              T(1.0) * T(-1.0) * T(u) * T(-u * b) * T(z / a) / (2.0 * T(-a / u) * T(-a * b / u)));
        break;
    case IdentityId::HADD3: {
        const cplx den = T(a * z / u);
        w.add(K(a, z), u / a * T(z) / den * K(u, a * z / u) +
                           T(1.0) * T(u) * T(-a) * T(z / u) / (2.0 * T(-a / u) * den));
        break;
    }
    case IdentityId::SP2:
        w.add(K(-u, -u), 0.5 * T(-1.0) * T(u));
        break;
    case IdentityId::SP3:
        w.add(K(-1.0, -u), 0.5 * T(1.0) * T(-1.0));
        break;
    case IdentityId::SP4:
        w.add(K(-1.0, 1.0), 0.5 * T(1.0));
        w.add(K(-1.0, -1.0), 0.5 * T(-1.0));
        break;
    case IdentityId::SP5:
        w.add(K(u, u), 0.5 * T(u));
        w.add(K(-u, u), 0.5 * T(u));
        break;
    case IdentityId::HALFSER_P:
        w.add(half_series(+1.0, z, nome, pol), K(u, z));
        break;
    case IdentityId::HALFSER_M:
        w.add(half_series(-1.0, z, nome, pol), K(-u, z));
        break;
    case IdentityId::ID4:
        // The last factor is theta(-q^{-1/2} b); this is what the
        // substitution a = q^{1/2}/b, z = q^{1/2} b in HADD3 produces.
        w.add(2.0 * K(u / b, u * b), T(b / u) + T(1.0) * T(b) / T(-b) * T(-b / u));
        break;
    case IdentityId::ID5SUM:
        w.add(K(u / b, b), T(u) * T(b / u) * T(-b / u) / (2.0 * T(-b)));
        break;
    case IdentityId::ID5PROD: {
        const cplx pq = P(q);
        const cplx pmq = P(-q);
        w.add(K(u / b, b), pq * pq * pmq * pmq * P(-b) * P(-q / b) * P(b) * P(q / b) / (P(u * b) * P(u / b)));
        break;
    }
    case IdentityId::ID55:
        w.add(T(-z) * K(a, z) + T(z) * K(-a, -z),
              T(u) * T(u) * T(1.0) * T(-1.0) * T(-z / a) / (2.0 * T(u / a) * T(-u / a)));
        break;
    case IdentityId::ID6: {
        const cplx tp = T(u / b);
        const cplx tm = T(-u / b);
        w.add(T(u) * T(u) * T(-b) * K(u / b, -b), tp * tp * T(-1.0) * K(u, -1.0) + tm * tm * T(1.0) * K(-u, 1.0));
        break;
    }
    case IdentityId::FOR1: {
        const cplx th = T(u);
        w.add(T(1.0) * K(u, -1.0) + T(-1.0) * K(-u, 1.0), 0.5 * th * th * th);
        break;
    }
    case IdentityId::FOR2: {
        const cplx th = T(u), tp = T(1.0), tm = T(-1.0);
        w.add(th * th * th * K(-1.0, u), tm * tm * tm * K(u, -1.0) + tp * tp * tp * K(-u, 1.0));
        break;
    }
    case IdentityId::JAC:
        w.add(dtheta_dz(-1.0 / u, nome, pol) / u, 0.5 * T(1.0) * T(-1.0) * T(u));
        break;
    case IdentityId::QUASI: {
        const auto r = modular::quasi_periodicity(modular::tau_of(nome), 2, pol);
        w.add(r.lhs, r.rhs);
        break;
    }
    }
    return make_report(to_string(id), p, nome, w.lhs, w.rhs);
}

double lattice_distance(cplx w, cplx base, cplx step)
{
    const cplx r = w / base;
    const double lstep = std::log(std::abs(step));
    const double center = std::round(std::log(std::abs(r)) / lstep);
    double best = std::numeric_limits<double>::infinity();
    for (double n = center - 1.0; n <= center + 1.0; n += 1.0) {
        best = std::min(best, std::abs(r / std::pow(step, n) - 1.0));
    }
    return best;
}

double guard_distance(IdentityId id, const EvalPoint& point, const Nome& u)
{
    const Guards g = guards_for(id, point, u);
    double best = std::numeric_limits<double>::infinity();
    for (cplx a : g.kappa_args) {
        best = std::min(best, lattice_distance(a, 1.0, u.q()));
    }
    for (cplx w : g.theta_dens) {
        best = std::min(best, lattice_distance(w, -u.u(), u.q()));
    }
    return best;
}

std::vector<Sample> sample_points(IdentityId id, const SampleDomain& domain, int count, std::uint64_t seed)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double lmin = std::log(domain.arg_min);
    const double lmax = std::log(domain.arg_max);
    const auto polar = [](double r, double phase) { return std::polar(r, phase); };
    const auto log_uniform = [&] { return polar(std::exp(lmin + (lmax - lmin) * unit(rng)), two_pi * unit(rng)); };

    std::vector<Sample> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    while (static_cast<int>(out.size()) < count) {
        const double abs_u = domain.u_min + (domain.u_max - domain.u_min) * unit(rng);
        const cplx v = polar(std::sqrt(abs_u), two_pi * unit(rng));
        const Nome nome{v * v};

        EvalPoint p;
        p.v = v;
        p.z = log_uniform();
        p.b = log_uniform();
        p.s = polar(std::exp(0.5 * (lmin + (lmax - lmin) * unit(rng))), two_pi * unit(rng));
        p.a = p.s * p.s;

        if (guard_distance(id, p, nome) >= domain.guard) {
            out.push_back({p, nome});
        }
    }
    return out;
}

} // namespace appell::num

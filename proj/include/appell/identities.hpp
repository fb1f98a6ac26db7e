#pragma once

// Registry of the displayed identities between theta and kappa, each checked
// by evaluating both sides literally at a point and reporting the residual.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "appell/kernel.hpp"

namespace appell::num {

enum class IdentityId {
    DEF,
    INV,
    DEF2,
    SYM,
    SQRT,
    ADDF,
    HADD,
    SP1,
    HADD2,
    HADD3,
    SP2,
    SP3,
    SP4,
    SP5,
    HALFSER_P,
    HALFSER_M,
    ID4,
    ID5SUM,
    ID5PROD,
    ID55,
    ID6,
    FOR1,
    FOR2,
    JAC,
    QUASI,
};

std::span<const IdentityId> all_identities() noexcept;
std::string_view to_string(IdentityId id) noexcept;
// Throws std::invalid_argument for an unknown name.
IdentityId parse_identity(std::string_view name);
std::optional<IdentityId> find_identity(std::string_view name) noexcept;

// Bindings of the free variables. s is a square root of a where an identity
// needs one (SQRT); v is the quarter nome q^{1/4} used by SQRT and ADDF.
struct EvalPoint {
    cplx z{1.0, 0.0};
    cplx a{1.0, 0.0};
    cplx b{1.0, 0.0};
    cplx s{1.0, 0.0};
    std::optional<cplx> v;
};

struct ResidualReport {
    std::string identity_id;
    EvalPoint point;
    cplx u;
    cplx lhs;
    cplx rhs;
    double abs_residual = 0.0;
    double scale = 1.0;
    double rel_residual = 0.0;
};

ResidualReport make_report(std::string_view id, const EvalPoint& point, const Nome& u, cplx lhs, cplx rhs);

/// Evaluates both sides of the named identity at (point, u). Identities
/// made of several equalities (DEF2, SQRT with both square roots, SP4, SP5,
/// QUASI over its shift grid) report the part with the largest relative
/// residual. Throws DomainError when the point violates the identity's
/// nonzero requirements or a kappa pole guard.
ResidualReport identity_residual(IdentityId id, const EvalPoint& point, const Nome& u,
                                 const TruncationPolicy& pol = {});

/// Smallest relative distance |w / (base * step^n) - 1| over n in Z.
double lattice_distance(cplx w, cplx base, cplx step);

/// Guard distance of the point for the given identity: the minimum of the
/// lattice distances of every kappa first argument from q^Z and every theta
/// denominator argument from the zero set -u q^Z. Identities without such
/// constraints return +infinity.
double guard_distance(IdentityId id, const EvalPoint& point, const Nome& u);

struct Sample {
    EvalPoint point;
    Nome nome;
};

struct SampleDomain {
    double u_min = 0.05;
    double u_max = 0.75;
    double arg_min = 0.5; // |z|, |a|, |b| log-uniform in [arg_min, arg_max]
    double arg_max = 2.0;
    double guard = 1e-3;
};

/// Deterministic pseudo-random points for an identity. |u| is uniform in
/// [u_min, u_max] with uniform argument, z, a, b are log-uniform in modulus
/// with uniform argument, a = s^2 and u = v^2. Points whose guard distance
/// is below domain.guard are redrawn.
std::vector<Sample> sample_points(IdentityId id, const SampleDomain& domain, int count, std::uint64_t seed);

} // namespace appell::num

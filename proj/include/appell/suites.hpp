#pragma once

// Named verification checks grouped into suites. Each check produces one
// CheckRecord; the CLI and the acceptance binary both run these.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "appell/identities.hpp"

namespace appell::suites {

enum class Suite { numeric, exact, bundles, modular };

std::string_view to_string(Suite s) noexcept;

struct CheckRecord {
    std::string id;
    Suite suite = Suite::numeric;
    int samples = 0;
    // Numeric checks carry a residual and a tolerance; exact checks leave
    // the residual empty and report the first failing exponent instead.
    std::optional<double> max_rel_residual;
    double tolerance = 0.0;
    bool pass = false;
    std::optional<std::size_t> failing_exponent;
    std::string detail;
};

struct Options {
    std::uint64_t seed = 0;
    int samples = 100;
    std::size_t exact_order = 80; // u-powers
};

inline constexpr double numeric_tolerance = 1e-9;
inline constexpr double modular_tolerance = 1e-8;

/// max relative residual of one identity over options.samples seeded points.
CheckRecord run_identity(num::IdentityId id, const Options& opt);

/// FOR1_EXACT or FOR2_EXACT at options.exact_order.
CheckRecord run_for_exact(num::IdentityId id, const Options& opt);

std::vector<CheckRecord> run_numeric(const Options& opt);
std::vector<CheckRecord> run_exact(const Options& opt);
std::vector<CheckRecord> run_bundles(const Options& opt);
std::vector<CheckRecord> run_modular(const Options& opt);

/// Ids of the non-identity checks each suite emits, in emission order.
std::vector<std::string> check_ids(Suite s);

/// Runs a suite name (all, numeric, exact, bundles, modular), an identity
/// id (numeric record, plus the exact record for FOR1/FOR2) or any single
/// check id. Records are sorted by id. Throws std::invalid_argument for an
/// unknown name.
std::vector<CheckRecord> run_named(std::string_view name, const Options& opt);

bool all_pass(const std::vector<CheckRecord>& records) noexcept;

} // namespace appell::suites

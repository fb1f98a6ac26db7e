#include <doctest.h>

#include <algorithm>

#include "appell/suites.hpp"

using namespace appell::suites;

namespace {

Options quick()
{
    Options o;
    o.samples = 12;
    o.exact_order = 24;
    return o;
}

} // namespace

TEST_CASE("every suite passes on a quick run")
{
    for (const auto& r : run_named("all", quick())) {
        CAPTURE(r.id);
        CAPTURE(r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("records are sorted by id and carry their suite")
{
    const auto records = run_named("all", quick());
    CHECK(std::is_sorted(records.begin(), records.end(),
                         [](const CheckRecord& l, const CheckRecord& r) { return l.id < r.id; }));
    // 25 identities plus the non-identity checks of each suite.
    std::size_t extra = 0;
    for (Suite s : {Suite::numeric, Suite::exact, Suite::bundles, Suite::modular}) {
        extra += check_ids(s).size();
    }
    CHECK(records.size() == 25 + extra);
    for (const auto& r : records) {
        if (r.id == "FOR1_EXACT") {
            CHECK(r.suite == Suite::exact);
            CHECK_FALSE(r.max_rel_residual.has_value());
        }
        if (r.id == "CONJ1") {
            CHECK(r.suite == Suite::bundles);
            CHECK(r.max_rel_residual.has_value());
            CHECK(r.tolerance == 1e-9);
        }
    }
}

TEST_CASE("named identity and check selection")
{
    const auto for1 = run_named("FOR1", quick());
    REQUIRE(for1.size() == 2);
    CHECK(for1[0].id == "FOR1");
    CHECK(for1[1].id == "FOR1_EXACT");

    const auto def = run_named("DEF", quick());
    REQUIRE(def.size() == 1);
    CHECK(def[0].samples == 12);

    const auto conj = run_named("CONJ2", quick());
    REQUIRE(conj.size() == 1);
    CHECK(conj[0].id == "CONJ2");

    CHECK_THROWS_AS(run_named("bogus", quick()), std::invalid_argument);
    CHECK(run_named("modular", quick()).size() == check_ids(Suite::modular).size());
}

TEST_CASE("runs are deterministic in the seed")
{
    Options a = quick();
    a.seed = 3;
    const auto r1 = run_named("numeric", a);
    const auto r2 = run_named("numeric", a);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].max_rel_residual == r2[i].max_rel_residual);
    }
    a.seed = 4;
    const auto r3 = run_named("DEF", a);
    const auto r4 = run_named("DEF", quick());
    CHECK(r3[0].max_rel_residual != r4[0].max_rel_residual);
}

TEST_CASE("exact records report a failing exponent")
{
    Options o = quick();
    o.exact_order = 1;
    const auto r = run_for_exact(appell::num::IdentityId::FOR1, o);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.detail.empty());
    CHECK_THROWS_AS(run_for_exact(appell::num::IdentityId::DEF, o), std::invalid_argument);
}

TEST_CASE("all_pass")
{
    std::vector<CheckRecord> v(2);
    v[0].pass = true;
    v[1].pass = false;
    CHECK_FALSE(all_pass(v));
    v[1].pass = true;
    CHECK(all_pass(v));
    CHECK(all_pass({}));
}

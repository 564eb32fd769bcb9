#include <doctest.h>

#include <cmath>

#include "nlpd/model.hpp"

using namespace nlpd;

namespace {

Instance minimal_instance() {
  Instance inst;
  inst.alpha = 2.0;
  inst.machines = 1;
  inst.jobs = {{1.0, {{0, 1.0, 0.0}}}};
  return inst;
}

}  // namespace

TEST_CASE("default discounts") {
  CHECK(effective_delta(2.0, Mode::Fractional) == 0.5);
  // (e*(alpha+1))^(1-alpha) at alpha=2 is 1/(3e)
  CHECK(effective_delta(2.0, Mode::Integer) ==
        doctest::Approx(0.12262648039048077).epsilon(1e-15));
  CHECK(effective_delta(2.0, Mode::Rounding) == 0.5);  // rounding reuses the fractional rule
  CHECK(effective_delta(3.0, Mode::Fractional) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("discount domain") {
  CHECK_THROWS_AS(effective_delta(1.0, Mode::Fractional), std::domain_error);
  CHECK_THROWS_AS(effective_delta(0.5, Mode::Integer), std::domain_error);
}

TEST_CASE("fractional discount inverts alpha^(alpha-1)") {
  for (double alpha : {1.1, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.5, 10.0}) {
    double prod = effective_delta(alpha, Mode::Fractional) * std::pow(alpha, alpha - 1.0);
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("delta override validation") {
  Parameters p;
  p.delta = 0.3;
  CHECK(p.resolve_delta(2.0) == 0.3);
  p.delta = 0.0;
  CHECK_THROWS_AS(p.resolve_delta(2.0), std::invalid_argument);
  p.delta = 1.5;
  CHECK_THROWS_AS(p.resolve_delta(2.0), std::invalid_argument);
  p.delta = 1.0;
  CHECK(p.resolve_delta(2.0) == 1.0);
  p.delta.reset();
  CHECK(p.resolve_delta(2.0) == 0.5);
}

TEST_CASE("minimal instance validates") {
  CHECK(validate_instance(minimal_instance()).ok());
  CHECK_NOTHROW(require_valid(minimal_instance()));
}

TEST_CASE("validation reports every violation without throwing") {
  Instance inst = minimal_instance();
  inst.jobs.push_back({1.0, {}});                 // no allowed machine
  inst.jobs.push_back({1.0, {{0, 0.0, 0.0}}});    // zero load coefficient
  inst.jobs.push_back({-1.0, {{0, 1.0, -2.0}}});  // bad demand, negative cost
  inst.jobs.push_back({1.0, {{5, 1.0, 0.0}}});    // machine id out of range
  inst.jobs.push_back({1.0, {{0, 1.0, 0.0}, {0, 2.0, 0.0}}});  // duplicate machine
  ValidationReport rep = validate_instance(inst);
  CHECK_FALSE(rep.ok());
  CHECK(rep.issues.size() >= 6);

  auto mentions = [&](const std::string& needle) {
    for (const ValidationIssue& is : rep.issues)
      if (is.message.find(needle) != std::string::npos) return true;
    return false;
  };
  CHECK(mentions("no allowed machine"));
  CHECK(mentions("positive"));
  CHECK_THROWS_AS(require_valid(inst), std::invalid_argument);
}

TEST_CASE("alpha at or below one is rejected") {
  Instance inst = minimal_instance();
  inst.alpha = 1.0;
  CHECK_FALSE(validate_instance(inst).ok());
  inst.alpha = 0.9;
  CHECK_FALSE(validate_instance(inst).ok());
}

TEST_CASE("validation is idempotent and side-effect free") {
  Instance inst = minimal_instance();
  inst.jobs.push_back({1.0, {}});
  ValidationReport a = validate_instance(inst);
  ValidationReport b = validate_instance(inst);
  CHECK(a.str() == b.str());
}

TEST_CASE("assignment state bookkeeping") {
  Instance inst;
  inst.alpha = 2.0;
  inst.machines = 2;
  inst.jobs = {{1.0, {{0, 2.0, 1.0}, {1, 1.0, 0.5}}}, {2.0, {{1, 3.0, 0.0}}}};

  AssignmentState st = make_empty_state(inst);
  REQUIRE(st.x.size() == 2);
  CHECK(st.x[0].size() == 2);
  CHECK(st.loads == std::vector<double>{0.0, 0.0});

  apply_allocation(st, inst, 0, {0.25, 0.75});
  apply_allocation(st, inst, 1, {2.0});
  CHECK(st.loads[0] == doctest::Approx(0.5));        // 2 * 0.25
  CHECK(st.loads[1] == doctest::Approx(0.75 + 6.0));  // 1*0.75 + 3*2

  std::vector<double> fresh = recompute_loads(st, inst);
  for (int e = 0; e < 2; ++e)
    CHECK(st.loads[e] == doctest::Approx(fresh[e]).epsilon(1e-12));

  double lc = load_cost(st, inst);
  double ac = assign_cost(st, inst);
  CHECK(lc == doctest::Approx(0.25 + 6.75 * 6.75));
  CHECK(ac == doctest::Approx(0.25 * 1.0 + 0.75 * 0.5));
  CHECK(objective(st, inst) == doctest::Approx(lc + ac));
}

TEST_CASE("mode names") {
  CHECK(std::string(mode_name(Mode::Fractional)) == "fractional");
  CHECK(std::string(mode_name(Mode::Integer)) == "integer");
  CHECK(std::string(mode_name(Mode::Rounding)) == "rounding");
}

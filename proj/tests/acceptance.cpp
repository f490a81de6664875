// Acceptance run: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit code is 0 iff every selected criterion passed.
#include "flatzeta/verify.hpp"
#include "flatzeta/zeta.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

using namespace flatzeta;

namespace {

const FamilyParams kSup(0, 2, 2, Rational(2), 0.5, 0.5);
const FamilyParams kCrit(0, 2, 2, Rational(1), 0.5, 0.5);
const FamilyParams kSub(1, 2, 2, Rational(1, 4), 0.5, 0.5);

// X_k = 2^(-3-k), k = 0..11
SigmaSchedule schedule() { return make_schedule(ScheduleKind::Geometric, 0.125, 0.5, 12, 2); }

struct Outcome {
  bool passed = true;
  std::string detail;
};

void add(Outcome& o, const VerificationReport& r) {
  o.passed = o.passed && r.passed;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += r.check_id + " " + (r.passed ? "ok" : "FAILED") + " (" + r.detail + ")";
}

Outcome c1() {
  Outcome o;
  add(o, verify_theorem31(kSup, schedule(), NumericConfig{}));
  return o;
}

Outcome c2() {
  Outcome o;
  add(o, verify_theorem31(kCrit, schedule(), NumericConfig{}));
  return o;
}

Outcome c3() {
  Outcome o;
  add(o, verify_theorem31(kSub, schedule(), NumericConfig{}));
  return o;
}

Outcome c4() {
  Outcome o;
  for (const FamilyParams* P : {&kSup, &kCrit, &kSub}) add(o, verify_theorem21(*P, BumpSpec{}, schedule(), NumericConfig{}));
  return o;
}

Outcome c5() {
  Outcome o;
  add(o, verify_sandwich_random(100, 20261016, NumericConfig{}));
  return o;
}

Outcome c6() {
  Outcome o;
  for (const FamilyParams* P : {&kSup, &kCrit, &kSub}) add(o, verify_decompositions(*P, 1.0, -0.49, NumericConfig{}));
  return o;
}

Outcome c7() {
  NumericConfig off;
  off.flat_term = false;
  std::vector<double> sigmas;
  for (int i = 1; i <= 20; ++i) sigmas.push_back(-0.5 + 0.49 * i / 20.0);
  Outcome o;
  add(o, verify_monomial_oracle(kSub, sigmas, off));
  return o;
}

Outcome c8() {
  Outcome o;
  add(o, verify_psi_and_flat(200, 20261016));
  add(o, verify_LM_limits(kSub, NumericConfig{}));
  add(o, verify_asym_invariants(kSub, NumericConfig{}, 200, 20261016));
  return o;
}

Outcome c9() {
  Outcome o;
  add(o, landau_taylor_rebuild(Monomial{1, 2}, BumpSpec{}, 0.5, -0.3, 40, NumericConfig{}));
  return o;
}

Outcome c10() {
  Outcome o;
  add(o, verify_nonpolar(kSup, schedule(), NumericConfig{}));
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"supercritical law", 60, c1},        {"critical law", 60, c2},
      {"subcritical bracket", 120, c3},     {"weighted limits", 300, c4},
      {"sandwich inequalities", 600, c5},   {"decomposition identities", 600, c6},
      {"monomial oracle", 600, c7},         {"lemma property suites", 600, c8},
      {"Taylor rebuild, J = 40", 600, c9},  {"non-polar signature", 600, c10},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = all[i].run();
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = dt < all[i].budget_s;
    bool pass = o.passed && in_budget;
    ok = ok && pass;
    std::printf("%s criterion %d (%s): %.2fs%s; %s\n", pass ? "PASS" : "FAIL", id, all[i].name, dt,
                in_budget ? "" : " over budget", o.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}

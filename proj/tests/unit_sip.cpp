#include "doctest.h"
#include "support.hpp"

using namespace supdiff;

namespace {

VecQ v1(const Rat& a) {
  VecQ v(1);
  v[0] = a;
  return v;
}

PolyFunc affine1(const Rat& a, const Rat& b) {
  PolyFunc f;
  f.dim = 1;
  f.pieces.push_back({v1(a), b});
  f.domain = full_space_h(1);
  return f;
}

SipProblem linear_sip() {
  ParametricFamily par;  // f_t(x) = -x - t on t in [0, 1]
  par.dim = 1;
  par.lo = 0;
  par.hi = 1;
  par.grid = 3;
  ParamPiece pp;
  pp.slope = {Poly{Rat(-1)}};
  pp.intercept = Poly{Rat(0), Rat(-1)};
  par.pieces.push_back(pp);
  par.domain = full_space_h(1);
  SipProblem p;
  p.dim = 1;
  p.objective = affine1(1, 0);
  p.constraints = par;
  return p;
}

SipProblem tight_sip() {
  SipProblem p;
  p.dim = 1;
  p.objective = affine1(1, 0);
  FiniteFamily fin;
  fin.members = {affine1(1, 0), affine1(-1, 0)};  // feasible set {0}
  p.constraints = fin;
  return p;
}

VecQ replay_sum(const Certificate& c, Eigen::Index d) {
  VecQ s = VecQ::Zero(d);
  for (const WitnessTerm& w : c.witness) s += w.coefficient * w.vector;
  return s;
}

void check_witness_shape(const Certificate& c, Eigen::Index d) {
  REQUIRE(c.holds);
  REQUIRE(!c.witness.empty());
  Rat total = 0, objTotal = 0;
  for (const WitnessTerm& w : c.witness) {
    CHECK(w.coefficient >= 0);
    total += w.coefficient;
    if (w.generator.rfind("f0:", 0) == 0) objTotal += w.coefficient;
  }
  if (c.kind == CertKind::FJ) CHECK(total == 1);
  if (c.kind == CertKind::KKT && objTotal > 0) CHECK(objTotal == 1);
  CHECK(replay_sum(c, d).isZero());
}

bool mentions(const std::vector<std::string>& notes, const char* needle) {
  for (const std::string& n : notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("slater search returns a strictly feasible witness") {
  const SlaterResult s = slater_check(linear_sip());
  REQUIRE(s.holds);
  REQUIRE(s.point);
  CHECK(s.note.find("f(x0) =") != std::string::npos);

  const SlaterResult none = slater_check(tight_sip());
  CHECK(!none.holds);
}

TEST_CASE("fritz-john certifies the slaterless problem") {
  const SipProblem tight = tight_sip();
  const Certificate fj = fj_check(tight, v1(0));
  check_witness_shape(fj, 1);
  REQUIRE(fj.witness.size() == 2);
  CHECK(fj.witness[0].generator == "f0:v0");
  CHECK(fj.witness[0].coefficient == Rat(1, 2));
  CHECK(fj.witness[1].generator == "K[f2]:v0");
  CHECK(fj.witness[1].coefficient == Rat(1, 2));

  CHECK_THROWS_WITH_AS(kkt_check(tight, v1(0)),
                       doctest::Contains("Fritz-John"), hypothesis_error);
}

TEST_CASE("kkt at the linear optimum") {
  const SipProblem p = linear_sip();
  const Certificate k = kkt_check(p, v1(0));
  check_witness_shape(k, 1);
  REQUIRE(k.witness.size() == 2);
  CHECK(k.witness[0].generator == "f0:v0");
  CHECK(k.witness[0].coefficient == 1);
  CHECK(k.witness[1].generator == "K[t=0]:v0");
  CHECK(k.witness[1].coefficient == 1);

  const Certificate kc = kkt_check(p, v1(0), true);
  check_witness_shape(kc, 1);
  CHECK(kc.kind == CertKind::KKTContinuous);
  bool hyp = false;
  for (const std::string& h : kc.checkedHypotheses)
    if (h.find("interior point") != std::string::npos) hyp = true;
  CHECK(hyp);

  check_witness_shape(fj_check(p, v1(0)), 1);
}

TEST_CASE("certificates refuse points that are not constraint-active") {
  SipProblem off;
  off.dim = 1;
  off.objective = affine1(1, 0);
  FiniteFamily fin;
  fin.members = {affine1(1, -1)};  // f(0) = -1, not 0
  off.constraints = fin;
  CHECK_THROWS_WITH_AS(fj_check(off, v1(0)),
                       doctest::Contains("f(xbar) = 0"), hypothesis_error);
  CHECK_THROWS_AS(kkt_check(off, v1(0)), hypothesis_error);
}

TEST_CASE("a stationary objective needs no constraint multipliers") {
  SipProblem stat;
  stat.dim = 1;
  stat.objective = affine1(1, 0);
  stat.objective.pieces.push_back({v1(-1), 0});  // |x|
  FiniteFamily fin;
  fin.members = {affine1(1, 0)};
  stat.constraints = fin;
  const Certificate k = kkt_check(stat, v1(0));
  check_witness_shape(k, 1);
  CHECK(mentions(k.notes, "multipliers are zero"));
  check_witness_shape(fj_check(stat, v1(0)), 1);
}

TEST_CASE("kkt separates the two ends of a box") {
  SipProblem box;
  box.dim = 1;
  box.objective = affine1(1, 0);
  FiniteFamily fin;
  fin.members = {affine1(1, -1), affine1(-1, -1)};  // |x| <= 1
  box.constraints = fin;
  const Certificate good = kkt_check(box, v1(-1));
  check_witness_shape(good, 1);
  const Certificate bad = kkt_check(box, v1(1));
  CHECK(!bad.holds);
  CHECK(bad.witness.empty());
}

TEST_CASE("grid refinement delta is zero for an affine parameter law") {
  const auto d = grid_refinement_delta(linear_sip(), v1(0));
  REQUIRE(d);
  CHECK(d->coarse == 3);
  CHECK(d->fine == 6);
  CHECK(d->comparable);
  CHECK(d->recessionEqual);
  CHECK(d->hausdorff == 0);

  CHECK(!grid_refinement_delta(tight_sip(), v1(0)));
}

TEST_CASE("kkt verdicts track true optimality on random boxed LPs") {
  std::mt19937_64 rng(717273);
  int optConfirmed = 0, nonOptRejected = 0, refusals = 0;
  for (int it = 0; it < 40; ++it) {
    const testsup::SipCase sc = testsup::rand_sip(rng);
    try {
      const Certificate atOpt = kkt_check(sc.prob, sc.opt);
      REQUIRE(atOpt.holds);
      check_witness_shape(atOpt, sc.prob.dim);
      ++optConfirmed;
      if (sc.worstValue > sc.optValue) {
        const Certificate atWorst = kkt_check(sc.prob, sc.worst);
        CHECK(!atWorst.holds);
        ++nonOptRejected;
      }
    } catch (const hypothesis_error&) {
      // no Slater point: fall back to the Fritz-John condition
      const Certificate fj = fj_check(sc.prob, sc.opt);
      CHECK(fj.holds);
      ++refusals;
    }
  }
  INFO("opt confirmed ", optConfirmed, ", non-opt rejected ", nonOptRejected,
       ", slaterless ", refusals);
  CHECK(optConfirmed >= 20);
  CHECK(nonOptRejected >= 10);
}

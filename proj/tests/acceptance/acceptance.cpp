// Acceptance suite: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "jumploci/cga.hpp"
#include "jumploci/complex.hpp"
#include "jumploci/equiv.hpp"
#include "jumploci/errors.hpp"
#include "jumploci/fox.hpp"

using namespace jumploci;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.ok && secs > budget_s) {
    c.ok = false;
    std::ostringstream s;
    s << "runtime " << secs << " s exceeds the " << budget_s << " s budget";
    c.detail = s.str();
  }
  if (!c.ok) ++failures;
  std::printf("%s %2d %s (%.3f s, budget %.0f s)%s%s\n", c.ok ? "PASS" : "FAIL", n, name.c_str(), secs, budget_s,
              c.ok ? "" : ": ", c.detail.c_str());
  std::fflush(stdout);
}

PolyMatrix mat(const RingPtr& R, std::size_t rows, std::size_t cols, const std::vector<std::string>& entries) {
  PolyMatrix m(R, rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) m.at(k / cols, k % cols) = parse_poly(R, entries[k]);
  return m;
}

std::string q_tag(const FieldPtr& f) { return " over " + f->name(); }

NuData make_nu(std::size_t b1, FinAbGroup g, std::vector<std::vector<long long>> free,
               std::vector<std::vector<long long>> tors = {}) {
  NuData nu;
  nu.source_rank = b1;
  nu.target = std::move(g);
  nu.free = std::move(free);
  nu.torsion = std::move(tors);
  return nu;
}

// Rule-by-rule Fox calculus, independent of the library's prefix formula.
Poly fox_oracle(const Word& w, std::size_t j, const NuData& nu, const RingPtr& R) {
  if (w.empty()) return Poly(R);
  const Letter l = w.front();
  Poly head(R);
  if (l.generator == j) {
    const Poly g = abelianize(Word{{j, 1}}, nu, R);
    head = l.exponent > 0 ? Poly::from_int(R, 1) : -g.unit_inverse();
  }
  return head + abelianize(Word{l}, nu, R) * fox_oracle(Word(w.begin() + 1, w.end()), j, nu, R);
}

std::vector<FreeChainComplex> corpus(const RingPtr& R, std::size_t count, std::uint64_t base_seed) {
  std::vector<FreeChainComplex> out;
  RandomComplexOptions opt;
  opt.length = 2;
  opt.max_rank = 4;
  opt.max_degree = 3;
  for (std::uint64_t s = 0; s < count; ++s) out.push_back(random_free_complex(R, opt, base_seed + s));
  return out;
}

std::vector<GradedAlgebra> cga_corpus(const FieldPtr& f) {
  std::vector<GradedAlgebra> out;
  out.push_back(pairing_cga(f, 2, 1, {{{0, 1}, {f->one()}}}));
  out.push_back(GradedAlgebra(f, {1, 2, 1}));
  out.push_back(pairing_cga(f, 2, 1, {{{0, 1}, {f->from_int(2)}}}));
  out.push_back(GradedAlgebra(f, {1, 3}));
  for (std::uint64_t s = 0; s < 6; ++s) out.push_back(sample_cga({1, 3, 2}, f, 100 + s));
  for (std::uint64_t s = 0; s < 4; ++s) out.push_back(sample_cga({1, 2, 1}, f, 200 + s));
  const auto torus3 = GroupPresentation::parse({"a", "b", "c"}, {"[a, b]", "[a, c]", "[b, c]"});
  out.push_back(quadratic_cup(torus3, f));
  return out;
}

}  // namespace

int main() {
  criterion(1, "augmentation complex S -> k: V^1_1 = k minus 0, W^0_1 u W^1_1 = k", 1, [](Check& c) {
    for (long long q : {3, 5, 7}) {
      const FieldPtr f = Field::prime(q);
      const RingPtr R = Ring::make(f, {"x"}, false);
      std::vector<ModulePresentation> terms{ModulePresentation(R, 1, mat(R, 1, 1, {"x"})), ModulePresentation(R, 1)};
      const PresentedChainComplex e(R, std::move(terms), {mat(R, 1, 1, {"1"})});
      PointSet nonzero(f, 1);
      for (long long a = 1; a < q; ++a) nonzero.insert({f->from_int(a)});
      c.require(jump_locus_points(e, 1, 1, f, false) == nonzero, "V^1_1 != F_q \\ {0}" + q_tag(f));
      const PointSet w = support_points(e, 0, 1, f, false).united(support_points(e, 1, 1, f, false));
      c.require(w == all_points(f, 1, false), "W^0_1 u W^1_1 != F_q" + q_tag(f));
    }
  });

  const FieldPtr f3 = Field::prime(3), f9 = Field::galois(9);
  const RingPtr laurent = Ring::make(f3, {"t"}, true);
  const RingPtr plane = Ring::make(f3, {"x", "y"}, false);

  criterion(2, "jump locus ideal zero sets equal pointwise jump loci (random free complexes)", 60, [&](Check& c) {
    std::size_t tested = 0;
    for (const RingPtr& R : {laurent, plane}) {
      const auto complexes = corpus(R, 50, R->laurent() ? 1000 : 2000);
      for (std::size_t n = 0; n < complexes.size(); ++n) {
        const auto& e = complexes[n];
        c.require(validate_complex(e).valid, "sampled complex is not a complex");
        const bool torus = R->laurent();
        for (int i = 0; i <= e.length(); ++i)
          for (long d = 1; d <= 4; ++d) {
            const Ideal I = jump_locus_ideal(e, i, d);
            for (const FieldPtr& F : {f3, f9}) {
              const bool eq = zero_locus_points(I, F, torus) == jump_locus_points(e, i, d, F, torus);
              c.require(eq, "mismatch for complex " + std::to_string(n) + " over " + R->describe() + " at i=" +
                                std::to_string(i) + ", d=" + std::to_string(d) + q_tag(F));
            }
          }
        ++tested;
      }
    }
    c.require(tested >= 100, "fewer than 50 complexes per ring");
  });

  criterion(3, "unions of W^i_1 equal unions of V^i_1 for every truncation (univariate corpus)", 60, [&](Check& c) {
    const auto complexes = corpus(laurent, 50, 1000);
    for (std::size_t n = 0; n < complexes.size(); ++n) {
      const auto& e = complexes[n];
      for (const FieldPtr& F : {f3, f9}) {
        PointSet v(F, 1, true), w(F, 1, true);
        for (int t = 0; t <= e.length(); ++t) {
          v = v.united(jump_locus_points(e, t, 1, F, true));
          w = w.united(support_points(e, t, 1, F, true));
          c.require(v == w, "complex " + std::to_string(n) + " truncation " + std::to_string(t) + q_tag(F));
        }
      }
    }
  });

  criterion(4, "resonance basics: R^0_1 = {0}, R^0_d empty for d >= 2, cones, nesting", 60, [](Check& c) {
    for (long long q : {3, 5}) {
      const FieldPtr f = Field::prime(q);
      for (const auto& A : cga_corpus(f)) {
        PointSet origin(f, A.dim(1));
        origin.insert(Coords(A.dim(1), f->zero()));
        c.require(resonance_points(A, 0, 1, f) == origin, "R^0_1 != {0}" + q_tag(f));
        c.require(resonance_points(A, 0, 2, f).empty(), "R^0_2 nonempty" + q_tag(f));
        for (int i = 0; i <= A.top_degree(); ++i)
          for (long d = 1; d <= 3; ++d) {
            const PointSet r = resonance_points(A, i, d, f);
            c.require(is_cone(r), "R^" + std::to_string(i) + "_" + std::to_string(d) + " is not a cone" + q_tag(f));
            c.require(resonance_points(A, i, d + 1, f).is_subset_of(r), "nesting fails" + q_tag(f));
          }
      }
    }
  });

  criterion(5, "zero pairing resonance, nondegenerate pairing, <a,b | a^2 b = b a^2> pipeline", 5, [](Check& c) {
    for (long long q : {3, 5, 7}) {
      const FieldPtr f = Field::prime(q);
      c.require(resonance_points(GradedAlgebra(f, {1, 2, 1}), 1, 1, f) == all_points(f, 2, false),
                "zero multiplication: R^1_1 is not all of A^1" + q_tag(f));
      PointSet origin(f, 2);
      origin.insert({f->zero(), f->zero()});
      c.require(resonance_points(pairing_cga(f, 2, 1, {{{0, 1}, {f->one()}}}), 1, 1, f) == origin,
                "nondegenerate pairing: R^1_1 != {0}" + q_tag(f));
    }
    const auto g = GroupPresentation::parse({"a", "b"}, {"a^2 b = b a^2"});
    for (long long q : {5, 7}) {
      const FieldPtr f = Field::prime(q);
      const GradedAlgebra A = quadratic_cup(g, f);
      c.require(validate_cga(A).valid, "cup algebra invalid" + q_tag(f));
      const FinitenessReport r = finiteness_test(A, NuData::identity(2), 1, f);
      c.require(r.hypothesis_holds, "hypothesis does not hold" + q_tag(f));
      for (const auto& d : r.degrees) c.require(d.support_in_origin, "E^2 support leaves the origin" + q_tag(f));
      c.require(r.degrees.size() == 2, "E^2 degrees missing");
      const AlexanderInvariant inv = alexander_invariant(g, NuData::identity(2), f);
      c.require(inv.finiteness.kind == FinitenessVerdict::Kind::infinite,
                "Alexander invariant is not reported infinite-dimensional: " + inv.finiteness.describe());
    }
  });

  criterion(6, "E^1 jump loci equal pulled-back resonance (torus, zero product, random cgas, varied nu)", 60,
            [](Check& c) {
              std::size_t random_cgas = 0, nontrivial_nu = 0;
              for (long long q : {3, 5}) {
                const FieldPtr f = Field::prime(q);
                std::vector<GradedAlgebra> algebras{pairing_cga(f, 2, 1, {{{0, 1}, {f->one()}}}),
                                                    GradedAlgebra(f, {1, 2, 1})};
                for (std::uint64_t s = 0; s < 12; ++s) algebras.push_back(sample_cga({1, 3, 2}, f, 300 + s));
                for (std::uint64_t s = 0; s < 6; ++s) algebras.push_back(sample_cga({1, 2, 1}, f, 400 + s));
                for (std::uint64_t s = 0; s < 4; ++s) algebras.push_back(sample_cga({1, 3, 3}, f, 500 + s));
                random_cgas += algebras.size() - 2;
                const std::vector<NuData> nus2{
                    make_nu(2, {1, {}}, {{1, 1}}),
                    make_nu(2, {2, {}}, {{1, 1}, {0, 1}}),
                    make_nu(2, {1, {2}}, {{1, 0}}, {{0, 1}}),
                    make_nu(2, {1, {3}}, {{1, 0}}, {{0, 1}}),
                };
                const std::vector<NuData> nus3{
                    make_nu(3, {2, {}}, {{1, 0, 1}, {0, 1, 1}}),
                    make_nu(3, {2, {6}}, {{1, 0, 0}, {0, 1, 0}}, {{1, 1, 1}}),
                    make_nu(3, {1, {q}}, {{1, 2, 0}}, {{0, 0, 1}}),
                };
                nontrivial_nu = nus2.size() + nus3.size();
                for (const auto& A : algebras) {
                  std::vector<NuData> maps{NuData::identity(A.dim(1))};
                  const auto& extra = A.dim(1) == 2 ? nus2 : nus3;
                  maps.insert(maps.end(), extra.begin(), extra.end());
                  for (const auto& nu : maps)
                    for (int i = 0; i <= 2; ++i)
                      for (long d = 1; d <= 2; ++d) {
                        const CvResReport r = verify_cv_res(A, nu, i, d, f);
                        c.require(r.equal, "mismatch for nu onto " + nu.target.describe() + " at i=" +
                                               std::to_string(i) + ", d=" + std::to_string(d) + q_tag(f));
                      }
                }
              }
              c.require(random_cgas >= 20, "fewer than 20 random cgas");
              c.require(nontrivial_nu >= 5, "fewer than 5 non-identity nu");
            });

  criterion(7, "associated graded ring of kG: truncated polynomial ring or k, one point", 1, [](Check& c) {
    struct Case {
      long long p, n, exponent;
    };
    for (const Case& k : std::vector<Case>{{2, 2, 2}, {2, 8, 8}, {3, 9, 9}, {5, 25, 25}, {3, 27, 27}}) {
      const GrRingDescriptor g = gr_ring(FinAbGroup{0, {k.n}}, Field::prime(k.p));
      c.require(g.nilpotent.size() == 1 && g.nilpotent[0].truncated && g.nilpotent[0].exponent == k.exponent,
                "Z/" + std::to_string(k.n) + " in char " + std::to_string(k.p) + ": expected k[x]/(x^" +
                    std::to_string(k.exponent) + ")");
      c.require(g.specm_dimension() == 0 && g.sbar->nvars() == 0, "specm is not a single point");
    }
    for (const auto& [p, n] : std::vector<std::pair<long long, long long>>{{2, 3}, {3, 4}, {5, 6}, {7, 10}}) {
      const GrRingDescriptor g = gr_ring(FinAbGroup{0, {n}}, Field::prime(p));
      c.require(!g.has_nilpotents() && !g.nilpotent[0].truncated,
                "Z/" + std::to_string(n) + " in char " + std::to_string(p) + ": expected S = k");
      c.require(g.specm_dimension() == 0 && g.sbar->nvars() == 0, "specm is not a single point");
    }
    const GrRingDescriptor q = gr_ring(FinAbGroup{0, {4}}, Field::rationals());
    c.require(!q.has_nilpotents(), "char 0 should give S = k");
  });

  criterion(8, "trefoil: Fox derivative, Alexander invariant, characteristic variety over F_7", 1, [](Check& c) {
    const FieldPtr f7 = Field::prime(7);
    const auto P = GroupPresentation::parse({"a", "b"}, {"a b a b^-1 a^-1 b^-1"});
    const NuData nu = make_nu(2, {1, {}}, {{1, 1}});
    const RingPtr R = alexander_ring(f7, 1);
    const Poly da = fox_derivative(P.relators()[0], 0, nu, R);
    c.require(da == parse_poly(R, "1 - t + t^2"), "d r / d a = " + da.to_string());
    c.require(da == fox_oracle(P.relators()[0], 0, nu, R), "disagrees with the rule-by-rule oracle");
    const RingPtr RQ = alexander_ring(Field::rationals(), 1);
    const AlexanderInvariant inv = alexander_invariant(P, nu, Field::rationals());
    c.require(inv.presentation.generators == 1 && inv.presentation.relations.cols() == 1 &&
                  inv.presentation.relations.at(0, 0) == parse_poly(RQ, "t^2 - t + 1"),
              "Alexander invariant is not k[t^+-1]/(t^2 - t + 1)");
    c.require(inv.finiteness.kind == FinitenessVerdict::Kind::finite && inv.finiteness.dimension == 2,
              "dimension: " + inv.finiteness.describe());
    const PointSet v = characteristic_variety_points(P, nu, 1, 1, f7);
    PointSet nontrivial(f7, 1, true);
    for (const auto& w : v.points())
      if (!f7->is_one(w[0])) nontrivial.insert(w);
    PointSet roots(f7, 1, true);
    roots.insert({f7->from_int(3)});
    roots.insert({f7->from_int(5)});
    c.require(nontrivial == roots, "non-identity characters: " + std::to_string(nontrivial.size()));
  });

  criterion(9, "sampling experiment on (1,2,1) over F_5, 200 trials", 30, [](Check& c) {
    const FieldPtr f5 = Field::prime(5);
    const std::uint64_t seed = 2024;
    const GenericVanishingReport r = generic_vanishing_experiment({1, 2, 1}, 1, 200, f5, seed);
    c.require(r.trials == 200 && r.records.size() == 200, "wrong trial count");
    c.require(r.nondegenerate_in_open == r.nondegenerate_count, "a nondegenerate pairing fell into the complement");
    for (const auto& t : r.records) {
      const GradedAlgebra A = sample_cga({1, 2, 1}, f5, derive_seed(seed, t.trial));
      const PointSet res = resonance_points(A, 1, 1, f5);
      c.require(t.resonance_size == res.size(), "trial " + std::to_string(t.trial) + " resonance size differs");
      c.require(t.in_complement == (res.size() > 1), "trial " + std::to_string(t.trial) + " misclassified");
      if (t.nondegenerate) c.require(!t.in_complement, "nondegenerate trial in the complement");
      if (t.witness) c.require(res.contains(*t.witness) && t.witness_verified, "witness is not resonant");
    }
    c.require(r.references.size() == 2, "expected two reference algebras");
    bool zero_seen = false;
    for (const auto& ref : r.references) {
      c.require(ref.recomputation_agrees, ref.name + ": recomputation disagrees");
      const bool zero = ref.name == "zero pairing";
      const GradedAlgebra A = zero ? GradedAlgebra(f5, {1, 2, 1}) : pairing_cga(f5, 2, 1, {{{0, 1}, {f5->one()}}});
      const PointSet res = resonance_points(A, 1, 1, f5);
      c.require(ref.resonance_size == res.size(), ref.name + ": resonance size differs from resonance_points");
      if (zero) {
        zero_seen = true;
        c.require(ref.in_complement, "zero pairing is not in the complement");
      } else {
        c.require(!ref.in_complement, "standard pairing is not in the open set");
      }
    }
    c.require(zero_seen, "zero pairing reference missing");
  });

  criterion(10, "fundamental Fox identity on 500+ random words", 10, [](Check& c) {
    std::mt19937_64 rng(99);
    const NuData nu = NuData::identity(3);
    const RingPtr R = alexander_ring(Field::rationals(), 3);
    std::size_t tested = 0;
    for (int trial = 0; trial < 600; ++trial) {
      const std::size_t gens = 1 + rng() % 3;
      const std::size_t len = rng() % 13;
      Word w;
      for (std::size_t p = 0; p < len; ++p) w.push_back({static_cast<std::size_t>(rng() % gens), rng() % 2 ? 1 : -1});
      Poly lhs(R);
      for (std::size_t j = 0; j < 3; ++j)
        lhs += fox_derivative(w, j, nu, R) * (abelianize(Word{{j, 1}}, nu, R) - Poly::from_int(R, 1));
      c.require(lhs == abelianize(w, nu, R) - Poly::from_int(R, 1), "identity fails for a word of length " +
                                                                       std::to_string(len));
      ++tested;
    }
    c.require(tested >= 500, "fewer than 500 words");
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#include "core/greendlinger.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace compro {

namespace {

// nearest lattice multiple of q to the difference, as the candidate
// recentering exponent
std::int64_t recenter_exponent(std::int64_t delta, std::int64_t q) {
  // round(delta / q) with ties toward zero magnitude
  std::int64_t k = delta / q;
  std::int64_t rem = delta % q;
  if (rem * 2 > q) ++k;
  if (-rem * 2 > q) --k;
  return -k;
}

}  // namespace

GreendlingerResult greendlinger(const GraphProductModel& model, const Word& gamma,
                                int coord_hint) {
  const auto& sys = model.system();
  const auto& calc = model.calc();
  const Ladder& ladder = model.ladder();
  GreendlingerResult res;

  Word g = calc.normal(gamma);
  if (g.empty()) {
    res.trivial = true;
    res.ok = true;
    return res;
  }

  Rational lower = ladder.Theta_Rot - Rational(2) * ladder.Theta_P - ladder.kappa;
  Rational upper = Rational(2) * ladder.Theta_P + Rational(3) * ladder.kappa;

  for (int ci = 0; ci < sys.m(); ++ci) {
    int coord = (coord_hint - 1 + ci) % sys.m() + 1;
    for (Gid x : sys.coordinate(coord)) {
      Locus lx = model.locus(x);
      Locus gx = model.apply_locus(g, lx);
      if (gx.rep == lx.rep) continue;  // gamma fixes this element

      // centers ranked by how far they see the displacement
      std::vector<std::pair<Rational, Gid>> ranked;
      for (Gid r : sys.coordinate(coord)) {
        if (r == x) continue;
        std::int64_t diff = model.proj_gid(r, x) - model.proj_word(r, gx.rep);
        if (diff < 0) diff = -diff;
        Rational d = model.spec().weight * Rational(diff);
        // require the displacement to clear the lower bound through the band
        if (d - ladder.kappa > lower) ranked.emplace_back(d, r);
      }
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return b.first < a.first;
        return a.second < b.second;
      });

      for (const auto& [d, r] : ranked) {
        std::int64_t px = model.proj_gid(r, x);
        std::int64_t pgx = model.proj_word(r, gx.rep);
        std::int64_t k0 = recenter_exponent(pgx - px, model.q());
        for (std::int64_t k : {k0, k0 + 1, k0 - 1}) {
          if (k == 0) continue;
          Word rot = model.rotation(r, k);
          Locus moved = model.apply_locus(rot, gx);
          Rational after = model.dpi_locus(r, lx, moved);
          if (after <= upper) {
            res.ok = true;
            res.step.coord = coord;
            res.step.witness = sys.id(x);
            res.step.center = sys.id(r);
            res.step.exponent = k;
            res.step.displacement = d;
            res.step.after = after;
            return res;
          }
        }
      }
    }
  }
  res.diagnostic = "no shortening pair found within the truncation";
  return res;
}

ReductionResult greendlinger_reduce(const GraphProductModel& model, const Word& gamma,
                                    int max_steps) {
  const auto& calc = model.calc();
  ReductionResult res;
  Word cur = calc.normal(gamma);
  int hint = 1;
  for (int step = 0; step < max_steps; ++step) {
    if (cur.empty()) {
      res.reached_identity = true;
      return res;
    }
    auto found = greendlinger(model, cur, hint);
    if (!found.ok) {
      res.diagnostic = "step " + std::to_string(step + 1) + ": " + found.diagnostic;
      return res;
    }
    res.steps.push_back(found.step);
    Gid center = model.system().gid(found.step.center);
    Word shortener = model.rotation(center, found.step.exponent);
    cur = calc.mul(shortener, cur);
    hint = found.step.coord;
  }
  if (cur.empty()) res.reached_identity = true;
  if (!res.reached_identity)
    res.diagnostic = "iteration cap reached before the identity";
  return res;
}

Word symbols_to_group(const Presentation& p, const WordCalc& calc, const Word& symbols) {
  Word out;
  for (const auto& s : symbols.syl) {
    if (s.gen >= 0)
      throw usage_error("expected presentation symbols s0, s1, ... in the word");
    size_t idx = size_t(-s.gen - 1);
    if (idx >= p.generators.size())
      throw usage_error("symbol s" + std::to_string(idx) + " exceeds the " +
                        std::to_string(p.generators.size()) + " emitted generators");
    Word piece = calc.power(p.generators[idx].word, s.exp);
    out.syl.insert(out.syl.end(), piece.syl.begin(), piece.syl.end());
  }
  return calc.normal(out);
}

}  // namespace compro

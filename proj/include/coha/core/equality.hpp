#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>

#include "coha/core/factored_rational.hpp"

namespace coha {

enum class EqualityMode { Exact, Probabilistic };

struct SamplingConfig {
  long range = 1000000;  // coordinates drawn from [-range, range]
  int samples = 3;
  int max_resamples = 64;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

inline bool equal_exact(const FactoredRational& a, const FactoredRational& b) {
  if (a.same_representation(b)) return true;
  return (a - b).is_zero();
}

inline std::map<VarId, Rational> random_point(const std::vector<VarId>& vars, std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  std::map<VarId, Rational> pt;
  for (VarId v : vars) pt[v] = Rational(d(rng));
  return pt;
}

// Schwartz-Zippel test; false means definitely unequal.
inline bool equal_probabilistic(const FactoredRational& a, const FactoredRational& b, const SamplingConfig& cfg = {}) {
  std::set<VarId> vs;
  for (VarId v : a.variables()) vs.insert(v);
  for (VarId v : b.variables()) vs.insert(v);
  std::vector<VarId> vars(vs.begin(), vs.end());
  std::mt19937_64 rng(cfg.seed);
  int done = 0, tries = 0;
  while (done < cfg.samples) {
    if (++tries > cfg.samples + cfg.max_resamples) throw PoleError("could not avoid poles while sampling");
    auto pt = random_point(vars, rng, cfg.range);
    Rational x, y;
    try {
      x = a.evaluate(pt);
      y = b.evaluate(pt);
    } catch (const PoleError&) {
      continue;
    }
    if (x != y) return false;
    ++done;
  }
  return true;
}

inline bool equal(const FactoredRational& a, const FactoredRational& b, EqualityMode mode,
                  const SamplingConfig& cfg = {}) {
  return mode == EqualityMode::Exact ? equal_exact(a, b) : equal_probabilistic(a, b, cfg);
}

}  // namespace coha

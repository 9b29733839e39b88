#include "genpf/generators.hpp"

#include "genpf/error.hpp"
#include "genpf/irreducibility.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace genpf {

namespace {

/// Squared distance between decimal coordinates, exactly.
Rational squared_distance(const std::vector<double>& p, const std::vector<double>& q) {
  Rational total = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Rational d = rational_from_double(p[k]) - rational_from_double(q[k]);
    total += d * d;
  }
  return total;
}

std::optional<long> even_integer_half(double alpha) {
  if (alpha != std::floor(alpha) || std::fmod(alpha, 2.0) != 0.0 || alpha > 64.0) return std::nullopt;
  return static_cast<long>(alpha / 2.0);
}

Rational path_gain(const Rational& squared, double alpha, std::optional<std::uint64_t> max_denominator) {
  if (auto half = even_integer_half(alpha); half && !max_denominator) {
    Rational power = 1;
    for (long k = 0; k < *half; ++k) power *= squared;
    return 1 / power;
  }
  const double gain = std::pow(squared.get_d(), -alpha / 2.0);
  if (!std::isfinite(gain) || gain <= 0.0) throw DegenerateScenario("path gain is not a positive finite number");
  if (max_denominator) {
    Rational q = best_rational_approximation(gain, *max_denominator);
    if (sgn(q) <= 0) throw DegenerateScenario("path gain rounds to zero at denominator " + std::to_string(*max_denominator));
    return q;
  }
  return rational_from_double(gain);
}

}  // namespace

GainSystem miso_to_system(const MisoScenario& scenario, std::optional<std::uint64_t> max_denominator) {
  const std::size_t n = scenario.receivers.size();
  const std::size_t m = scenario.transmitters.size();
  if (n == 0) throw std::invalid_argument("scenario has no receivers");
  if (m == 0) throw std::invalid_argument("scenario has no transmitters");
  if (!(scenario.alpha > 0.0) || !std::isfinite(scenario.alpha)) throw std::invalid_argument("alpha must be positive");
  if (max_denominator && *max_denominator == 0) throw std::invalid_argument("max denominator must be positive");
  const std::size_t dim = scenario.receivers.front().size();
  auto check_point = [&](const std::vector<double>& p, const std::string& what) {
    if (p.size() != dim) throw std::invalid_argument(what + " has dimension " + std::to_string(p.size()) +
                                                     ", expected " + std::to_string(dim));
    for (double c : p) {
      if (!std::isfinite(c)) throw std::invalid_argument(what + " has a non-finite coordinate");
    }
  };
  for (std::size_t i = 0; i < n; ++i) check_point(scenario.receivers[i], "receiver " + std::to_string(i));
  std::vector<std::size_t> owned(n, 0);
  for (std::size_t l = 0; l < m; ++l) {
    const MisoTransmitter& t = scenario.transmitters[l];
    check_point(t.position, "transmitter " + std::to_string(l));
    if (t.receiver >= n) throw std::invalid_argument("transmitter " + std::to_string(l) + " serves an unknown receiver");
    ++owned[t.receiver];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (owned[i] == 0) throw std::invalid_argument("receiver " + std::to_string(i) + " owns no transmitter");
    if (owned[i] == m) {
      throw DegenerateScenario("receiver " + std::to_string(i) + " has no interfering transmitter");
    }
  }

  Matrix<Rational> s(n, m);
  Matrix<Rational> r(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < m; ++l) {
      const Rational sq = squared_distance(scenario.receivers[i], scenario.transmitters[l].position);
      if (sgn(sq) == 0) {
        throw DegenerateScenario("transmitter " + std::to_string(l) + " coincides with receiver " + std::to_string(i));
      }
      const Rational gain = path_gain(sq, scenario.alpha, max_denominator);
      if (scenario.transmitters[l].receiver == i) {
        s(i, l) = gain;
      } else {
        r(i, l) = gain;
      }
    }
  }
  return GainSystem(std::move(s), std::move(r));
}

GainSystem economy_to_system(const EconomyScenario& scenario) {
  const std::size_t n = scenario.industries.size();
  const std::size_t m = scenario.commodities.size();
  if (n == 0 || m == 0) throw std::invalid_argument("economy needs industries and commodities");
  auto check_shape = [&](const Matrix<Rational>& a, const std::string& what) {
    if (a.rows() != n || a.cols() != m) {
      throw std::invalid_argument(what + " must be " + std::to_string(n) + " x " + std::to_string(m));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (sgn(a(i, j)) < 0) throw std::invalid_argument(what + " has a negative rate");
  };
  check_shape(scenario.production, "production");
  check_shape(scenario.requirements, "requirements");

  for (std::size_t j = 0; j < m; ++j) {
    std::optional<std::size_t> producer;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(scenario.production(i, j)) == 0) continue;
      if (producer) {
        throw DegenerateScenario("commodity '" + scenario.commodities[j] + "' is produced by both '" +
                                 scenario.industries[*producer] + "' and '" + scenario.industries[i] +
                                 "'; shared supporters make the system reducible");
      }
      producer = i;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool produces = false;
    bool consumes = false;
    for (std::size_t j = 0; j < m; ++j) {
      const bool p = sgn(scenario.production(i, j)) > 0;
      const bool c = sgn(scenario.requirements(i, j)) > 0;
      if (p && c) {
        throw DegenerateScenario("industry '" + scenario.industries[i] + "' both produces and consumes '" +
                                 scenario.commodities[j] + "'");
      }
      produces = produces || p;
      consumes = consumes || c;
    }
    if (!produces) throw DegenerateScenario("industry '" + scenario.industries[i] + "' produces nothing");
    if (!consumes) throw DegenerateScenario("industry '" + scenario.industries[i] + "' has no requirements");
  }
  return GainSystem(scenario.production, scenario.requirements);
}

RandomInstance random_irreducible_instance(std::uint64_t seed, const RandomInstanceSpec& spec) {
  if (spec.min_entities < 2 || spec.max_entities < spec.min_entities) {
    throw std::invalid_argument("entity range must satisfy 2 <= min <= max");
  }
  if (spec.min_supporters < 1 || spec.max_supporters < spec.min_supporters) {
    throw std::invalid_argument("supporter range must satisfy 1 <= min <= max");
  }
  if (spec.max_affectors < spec.max_entities * spec.min_supporters) {
    throw std::invalid_argument("max_affectors too small for the entity and supporter ranges");
  }
  if (spec.min_gain < 1 || spec.max_gain < spec.min_gain) throw std::invalid_argument("gain range must be 1 <= min <= max");
  if (!(spec.repressor_density > 0.0 && spec.repressor_density <= 1.0)) {
    throw std::invalid_argument("repressor density must lie in (0, 1]");
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  auto coin = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };

  for (std::size_t attempt = 1; attempt <= spec.max_attempts; ++attempt) {
    const std::size_t n = uniform(spec.min_entities, spec.max_entities);
    std::vector<std::size_t> sizes(n);
    for (std::size_t& k : sizes) k = uniform(spec.min_supporters, spec.max_supporters);
    std::size_t m = 0;
    for (std::size_t k : sizes) m += k;
    while (m > spec.max_affectors) {
      const std::size_t i = uniform(0, n - 1);
      if (sizes[i] > spec.min_supporters) {
        --sizes[i];
        --m;
      }
    }

    Matrix<Rational> s(n, m);
    Matrix<Rational> r(n, m);
    std::vector<std::size_t> owner(m);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < sizes[i]; ++k) owner[next++] = i;
    }
    const auto gain = [&]() {
      return Rational(static_cast<long>(uniform(static_cast<std::size_t>(spec.min_gain),
                                                static_cast<std::size_t>(spec.max_gain))));
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (owner[j] == i) {
          s(i, j) = gain();
        } else if (coin(spec.repressor_density)) {
          r(i, j) = gain();
        }
      }
    }
    GainSystem candidate(std::move(s), std::move(r));
    if (!validate(candidate).empty()) continue;
    if (test_irreducible(candidate).irreducible) return RandomInstance{std::move(candidate), seed, attempt};
  }
  throw Error("no irreducible instance within " + std::to_string(spec.max_attempts) + " draws for seed " +
              std::to_string(seed));
}

std::vector<RandomInstance> random_corpus(std::uint64_t base_seed, std::size_t count, const RandomInstanceSpec& spec) {
  std::vector<RandomInstance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_irreducible_instance(base_seed + k, spec));
  return out;
}

}  // namespace genpf

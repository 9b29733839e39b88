#pragma once

#include "genpf/rational.hpp"
#include "genpf/system.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace genpf {

struct MisoTransmitter {
  std::vector<double> position;
  /// Index of the receiver this transmitter serves.
  std::size_t receiver = 0;
};

/// Receivers and transmitters in d-dimensional space with path loss d^-alpha.
struct MisoScenario {
  std::vector<std::vector<double>> receivers;
  std::vector<MisoTransmitter> transmitters;
  double alpha = 2.0;
};

/// Entities are receivers, affectors are transmitters. A transmitter
/// supports its own receiver and represses every other one, with gain
/// d(r, t)^-alpha. Coordinates are read as their shortest decimal text; for
/// an even integer alpha the gains are then exact. Otherwise the float gain
/// is converted, rounded to denominator <= max_denominator when given.
/// Throws DegenerateScenario (coincident positions, a receiver without
/// interferers) and std::invalid_argument (malformed scenario).
GainSystem miso_to_system(const MisoScenario& scenario,
                          std::optional<std::uint64_t> max_denominator = std::nullopt);

/// Industries (entities) trading commodities (affectors). production(i, j)
/// is the rate at which industry i makes commodity j, requirements(i, j) the
/// rate at which it consumes it.
struct EconomyScenario {
  std::vector<std::string> industries;
  std::vector<std::string> commodities;
  Matrix<Rational> production;
  Matrix<Rational> requirements;
};

/// Supporter gains are production rates, repressor gains requirement rates.
/// Throws DegenerateScenario when a commodity has two producers, an industry
/// produces nothing or consumes nothing, or an industry consumes what it
/// produces; std::invalid_argument on shape errors or negative rates.
GainSystem economy_to_system(const EconomyScenario& scenario);

struct RandomInstanceSpec {
  std::size_t min_entities = 2;
  std::size_t max_entities = 4;
  std::size_t min_supporters = 1;
  std::size_t max_supporters = 3;
  std::size_t max_affectors = 9;
  int min_gain = 1;
  int max_gain = 9;
  /// Chance that an affector represses an entity it does not support.
  double repressor_density = 0.5;
  std::size_t max_attempts = 100000;
};

struct RandomInstance {
  GainSystem system;
  std::uint64_t seed = 0;
  /// Draws until the irreducibility test passed.
  std::size_t attempts = 0;
};

/// Rejection-samples integer-gain systems with disjoint supporter blocks
/// until one is irreducible. Same seed, same instance.
RandomInstance random_irreducible_instance(std::uint64_t seed, const RandomInstanceSpec& spec = {});

/// `count` instances with seeds base_seed, base_seed + 1, ...
std::vector<RandomInstance> random_corpus(std::uint64_t base_seed, std::size_t count,
                                          const RandomInstanceSpec& spec = {});

}  // namespace genpf

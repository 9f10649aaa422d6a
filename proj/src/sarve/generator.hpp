#ifndef SARVE_GENERATOR_HPP
#define SARVE_GENERATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sarve/model.hpp"

namespace sarve {

/// Knobs of the synthetic conference generator. Defaults follow the 2012
/// web-based-learning conference simulation: 78 participants, contacts of at
/// most 7 meetings and 80 minutes, and a 720-minute frame.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_participants = 78;
  int n_presenters = 20;
  int n_sessions = 24;
  int tag_vocabulary = 12;
  double rating_density = 0.5;
  int max_contact_duration = 80;
  int max_contact_frequency = 7;
  int frame_T = 720;
  int n_locations = 4;
  double availability_coverage = 0.6;
  // Probability that a given pair of participants met at all.
  double contact_density = 0.15;
  int session_length = 60;

  double gamma = 1.0;
  double beta = 0.5;
  double delta = 0.5;
  int top_n = 5;
};

std::vector<std::string> validate_config(const GeneratorConfig& cfg);

/// Deterministic per seed; the result always passes validate(). Throws Error
/// for invalid configs, including sessions that cannot fit in the frame.
ConferenceInstance generate(const GeneratorConfig& cfg);

}  // namespace sarve

#endif  // SARVE_GENERATOR_HPP

#ifndef SARVE_SIMILARITY_HPP
#define SARVE_SIMILARITY_HPP

#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "sarve/model.hpp"

namespace sarve {

/// Pearson correlation in [-1, 1], or nullopt when undefined (fewer than two
/// co-rated tags, or zero variance on either side).
using SimilarityScore = std::optional<double>;

/// Pearson correlation of two paired rating vectors of equal length.
///
/// Computed from integer sums, so perfect agreement and disagreement come out
/// as exactly 1 and -1 and zero variance is detected exactly.
SimilarityScore pearson_paired(std::span<const int> x, std::span<const int> y);

/// Pearson correlation of c and d over the tags both have rated. Means are
/// taken over that co-rated set only. Throws Error if c == d.
SimilarityScore pearson(const RatingMatrix& ratings, const ParticipantId& c, const ParticipantId& d);

/// As above, additionally rejecting ids absent from the roster.
SimilarityScore pearson(const ConferenceInstance& conf, const ParticipantId& c, const ParticipantId& d);

bool passes_gamma(const SimilarityScore& s, const Thresholds& t);

struct Neighbor {
  ParticipantId id;
  double score = 0.0;

  bool operator==(const Neighbor&) const = default;
};

/// The k candidates with the highest defined similarity to target, best first,
/// ties broken by ascending id.
std::vector<Neighbor> k_most_similar(const RatingMatrix& ratings, const ParticipantId& target,
                                     const std::set<ParticipantId>& candidates, std::size_t k);

}  // namespace sarve

#endif  // SARVE_SIMILARITY_HPP

#include "sarve/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>

namespace sarve {

SimilarityScore pearson_paired(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error("pearson: rating vectors differ in length");
  const auto n = static_cast<std::int64_t>(x.size());
  if (n < 2) return std::nullopt;

  std::int64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += std::int64_t{x[i]} * x[i];
    syy += std::int64_t{y[i]} * y[i];
    sxy += std::int64_t{x[i]} * y[i];
  }
  // n^2 times the centered sums of squares and cross products.
  const std::int64_t cov = n * sxy - sx * sy;
  const std::int64_t var_x = n * sxx - sx * sx;
  const std::int64_t var_y = n * syy - sy * sy;
  if (var_x == 0 || var_y == 0) return std::nullopt;

  const double r =
      static_cast<double>(cov) / std::sqrt(static_cast<double>(var_x) * static_cast<double>(var_y));
  return std::clamp(r, -1.0, 1.0);
}

SimilarityScore pearson(const RatingMatrix& ratings, const ParticipantId& c, const ParticipantId& d) {
  if (c == d) throw Error(fmt::format("pearson: participant '{}' compared with itself", c.value));
  const auto rc = ratings.of(c);
  const auto rd = ratings.of(d);

  std::vector<int> x, y;
  // Both runs are sorted by tag; merge to find the co-rated set.
  auto i = rc.begin();
  auto j = rd.begin();
  while (i != rc.end() && j != rd.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      x.push_back(i->second);
      y.push_back(j->second);
      ++i;
      ++j;
    }
  }
  return pearson_paired(x, y);
}

SimilarityScore pearson(const ConferenceInstance& conf, const ParticipantId& c, const ParticipantId& d) {
  for (const auto* p : {&c, &d}) {
    if (!conf.in_roster(*p)) throw NotFound(fmt::format("participant '{}' is not in the roster", p->value));
  }
  return pearson(conf.ratings, c, d);
}

bool passes_gamma(const SimilarityScore& s, const Thresholds& t) { return s.has_value() && *s >= t.gamma; }

std::vector<Neighbor> k_most_similar(const RatingMatrix& ratings, const ParticipantId& target,
                                     const std::set<ParticipantId>& candidates, std::size_t k) {
  std::vector<Neighbor> out;
  if (k == 0) return out;
  for (const auto& cand : candidates) {
    if (cand == target) continue;
    if (auto s = pearson(ratings, target, cand)) out.push_back({cand, *s});
  }
  std::stable_sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace sarve

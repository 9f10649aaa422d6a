#ifndef SARVE_EVALUATION_HPP
#define SARVE_EVALUATION_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sarve/model.hpp"
#include "sarve/recommender.hpp"

namespace sarve {

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 1;
};

/// Number of a participant's n items kept for training:
/// floor(n * train_fraction), clamped to [1, n - 1] so both sides are
/// non-empty. The test side gets the remainder.
int train_count(int n, double train_fraction);

struct PairKey {
  ParticipantId participant;
  SessionId session;

  auto operator<=>(const PairKey&) const = default;
};

/// Ground truth for every evaluated (participant, session) pair.
using RelevanceLabels = std::map<PairKey, bool>;

struct SplitResult {
  ConferenceInstance train;
  RelevanceLabels labels;
  RatingMatrix held_out_ratings;
  ContactLog held_out_contacts;
};

/// Relevance rule used by split(). A pair (i, s) is evaluated whenever i does
/// not present s. It is relevant iff i's availability covers s and the
/// withheld data shows either a rating >= 4 by i on one of s's topic tags, or
/// a recorded contact between i and s's presenter.
RelevanceLabels label_pairs(const ConferenceInstance& conf, const RatingMatrix& held_out_ratings,
                            const ContactLog& held_out_contacts);

inline constexpr int kRelevantRating = 4;

inline constexpr const char* kRelevanceRule =
    "relevant iff the participant's availability covers the session and the withheld data holds a rating >= 4 "
    "on one of its topic tags or a contact with its presenter";

/// Seeded train/test split. Withholds the test share of each participant's
/// ratings and of the contact log; labels pairs from the withheld part.
/// Throws Error if a participant has fewer than two ratings.
SplitResult split(const ConferenceInstance& conf, const SplitSpec& spec);

struct ConfusionCounts {
  long long e = 0;  // retrieved, relevant
  long long f = 0;  // retrieved, not relevant
  long long g = 0;  // missed, relevant
  long long h = 0;  // missed, not relevant

  long long total() const { return e + f + g + h; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// Tallies every labeled pair; retrieved means present on `channel`. Throws
/// Error when a retrieved pair has no label.
ConfusionCounts confusion(const RecommendationSet& recs, const RelevanceLabels& labels, Channel channel);

// 0/0 is reported as 0 for both metrics.
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);

struct SweepPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  ConfusionCounts counts;
};

struct SweepReport {
  Channel channel = Channel::SocialContext;
  std::vector<SweepPoint> points;
  std::string dataset_id;
  std::uint64_t split_seed = 0;
  Thresholds fixed;  // the thresholds not being swept
};

/// Runs the engine once per grid value, varying gamma (social context) or
/// beta (social relations, delta fixed). Grid must be non-empty and ascending.
SweepReport sweep(const ConferenceInstance& conf, const RelevanceLabels& labels, Channel channel,
                  std::span<const double> grid, const EngineOptions& options = {});

struct AblationRow {
  std::string scorer;
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  ConfusionCounts counts;
};

struct AblationTable {
  Channel channel = Channel::SocialContext;
  std::vector<AblationRow> rows;
};

struct AblationReport {
  AblationTable social_context;
  AblationTable social_relations;
};

inline constexpr const char* kScorerFull = "SARVE";
inline constexpr const char* kScorerPearsonOnly = "Pearson-only (ablation)";
inline constexpr const char* kScorerTieOnly = "Tie-only (ablation)";

/// Full engine against two single-signal ablations, evaluated at gamma for
/// the social-context table and at beta for the social-relations table.
AblationReport ablation_report(const ConferenceInstance& conf, const RelevanceLabels& labels, double gamma,
                               double beta);

struct EvaluateOptions {
  Channel channel = Channel::SocialContext;
  std::vector<double> grid;
  SplitSpec split;
};

struct EvaluationRun {
  SplitResult split;
  SweepReport sweep;
  AblationReport ablation;
};

/// split -> sweep -> ablation. The ablation uses the last grid value for the
/// swept channel and the dataset's threshold for the other.
EvaluationRun evaluate(const ConferenceInstance& conf, const EvaluateOptions& options);

/// channel,threshold,e,f,g,h,precision,recall
std::string sweep_csv(const SweepReport& report);

/// Plain-text sweep table, ablation tables and run metadata.
std::string render_evaluation(const EvaluationRun& run);

std::string render_ablation(const AblationReport& report);

}  // namespace sarve

#endif  // SARVE_EVALUATION_HPP

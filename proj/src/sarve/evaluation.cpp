#include "sarve/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sarve/dataset_io.hpp"
#include "sarve/random.hpp"

namespace sarve {

int train_count(int n, double train_fraction) {
  if (n < 2) throw Error(fmt::format("cannot split {} item(s)", n));
  // The epsilon absorbs products such as 0.29 * 100 = 28.999999999999996.
  const int raw = static_cast<int>(std::floor(n * train_fraction + 1e-9));
  return std::clamp(raw, 1, n - 1);
}

RelevanceLabels label_pairs(const ConferenceInstance& conf, const RatingMatrix& held_out_ratings,
                            const ContactLog& held_out_contacts) {
  RelevanceLabels labels;
  for (const auto& i : conf.roster) {
    const AvailabilityContext* avail = conf.availability_of(i);
    for (const auto& s : conf.sessions) {
      if (s.presenter == i) continue;
      bool relevant = false;
      if (context_match(s, avail)) {
        for (const auto& t : s.topic_tags) {
          auto r = held_out_ratings.get(i, t);
          if (r && *r >= kRelevantRating) relevant = true;
        }
        auto c = held_out_contacts.get(i, s.presenter);
        if (c && c->frequency >= 1) relevant = true;
      }
      labels.emplace(PairKey{i, s.id}, relevant);
    }
  }
  return labels;
}

SplitResult split(const ConferenceInstance& conf, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(fmt::format("train fraction {} must be in (0, 1)", spec.train_fraction));
  }
  for (const auto& p : conf.roster) {
    const auto n = conf.ratings.of(p).size();
    if (n < 2) throw Error(fmt::format("participant '{}' has {} rating(s); at least 2 are needed to split", p.value, n));
  }

  Rng rng(spec.seed);
  SplitResult out;
  out.train = conf;
  out.train.ratings = RatingMatrix{};
  out.train.contacts = ContactLog{};

  for (const auto& p : conf.roster) {
    auto items = conf.ratings.of(p);
    rng.shuffle(items);
    const auto keep = static_cast<std::size_t>(train_count(static_cast<int>(items.size()), spec.train_fraction));
    for (std::size_t k = 0; k < items.size(); ++k) {
      auto& target = k < keep ? out.train.ratings : out.held_out_ratings;
      target.set(p, items[k].first, items[k].second);
    }
  }

  std::vector<std::pair<ContactLog::Key, Contact>> contacts(conf.contacts.entries().begin(),
                                                            conf.contacts.entries().end());
  rng.shuffle(contacts);
  const auto keep_contacts =
      static_cast<std::size_t>(std::floor(static_cast<double>(contacts.size()) * spec.train_fraction + 1e-9));
  for (std::size_t k = 0; k < contacts.size(); ++k) {
    auto& target = k < keep_contacts ? out.train.contacts : out.held_out_contacts;
    target.set(contacts[k].first.first, contacts[k].first.second, contacts[k].second);
  }

  out.labels = label_pairs(conf, out.held_out_ratings, out.held_out_contacts);
  return out;
}

ConfusionCounts confusion(const RecommendationSet& recs, const RelevanceLabels& labels, Channel channel) {
  std::size_t retrieved_labeled = 0;
  ConfusionCounts c;
  for (const auto& [key, relevant] : labels) {
    const bool retrieved = recs.contains(key.participant, key.session, channel);
    if (retrieved) ++retrieved_labeled;
    if (retrieved && relevant) ++c.e;
    else if (retrieved) ++c.f;
    else if (relevant) ++c.g;
    else ++c.h;
  }
  if (retrieved_labeled != recs.count(channel)) {
    throw Error(fmt::format("{} retrieved pair(s) on {} have no relevance label",
                            recs.count(channel) - retrieved_labeled, to_string(channel)));
  }
  return c;
}

double precision(const ConfusionCounts& c) {
  const long long d = c.e + c.f;
  return d == 0 ? 0.0 : static_cast<double>(c.e) / static_cast<double>(d);
}

double recall(const ConfusionCounts& c) {
  const long long d = c.e + c.g;
  return d == 0 ? 0.0 : static_cast<double>(c.e) / static_cast<double>(d);
}

namespace {

Thresholds with_threshold(Thresholds th, Channel channel, double value) {
  if (channel == Channel::SocialContext) th.gamma = value;
  else th.beta = value;
  return th;
}

}  // namespace

SweepReport sweep(const ConferenceInstance& conf, const RelevanceLabels& labels, Channel channel,
                  std::span<const double> grid, const EngineOptions& options) {
  if (grid.empty()) throw Error("sweep grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end())) throw Error("sweep grid must be in ascending order");

  SweepReport report;
  report.channel = channel;
  report.dataset_id = dataset_id(conf);
  report.fixed = conf.thresholds;

  ConferenceInstance run = conf;
  for (double value : grid) {
    run.thresholds = with_threshold(conf.thresholds, channel, value);
    const auto recs = recommend(run, options);
    SweepPoint pt;
    pt.threshold = value;
    pt.counts = confusion(recs, labels, channel);
    pt.precision = precision(pt.counts);
    pt.recall = recall(pt.counts);
    report.points.push_back(pt);
  }
  return report;
}

AblationReport ablation_report(const ConferenceInstance& conf, const RelevanceLabels& labels, double gamma,
                               double beta) {
  struct Scorer {
    const char* name;
    EngineOptions options;
  };
  const Scorer scorers[] = {
      {kScorerFull, EngineOptions{}},
      {kScorerPearsonOnly, EngineOptions{.social_relations = false}},
      {kScorerTieOnly, EngineOptions{.social_context = false, .use_centrality = false}},
  };

  ConferenceInstance run = conf;
  run.thresholds.gamma = gamma;
  run.thresholds.beta = beta;

  AblationReport report;
  report.social_context.channel = Channel::SocialContext;
  report.social_relations.channel = Channel::SocialRelations;
  for (const auto& scorer : scorers) {
    const auto recs = recommend(run, scorer.options);
    for (auto* table : {&report.social_context, &report.social_relations}) {
      AblationRow row;
      row.scorer = scorer.name;
      row.threshold = table->channel == Channel::SocialContext ? gamma : beta;
      row.counts = confusion(recs, labels, table->channel);
      row.precision = precision(row.counts);
      row.recall = recall(row.counts);
      table->rows.push_back(std::move(row));
    }
  }
  return report;
}

EvaluationRun evaluate(const ConferenceInstance& conf, const EvaluateOptions& options) {
  EvaluationRun run;
  run.split = split(conf, options.split);
  run.sweep = sweep(run.split.train, run.split.labels, options.channel, options.grid);
  run.sweep.split_seed = options.split.seed;

  const auto& th = conf.thresholds;
  const double top = options.grid.back();
  const double gamma = options.channel == Channel::SocialContext ? top : th.gamma;
  const double beta = options.channel == Channel::SocialRelations ? top : th.beta;
  run.ablation = ablation_report(run.split.train, run.split.labels, gamma, beta);
  return run;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "channel,threshold,e,f,g,h,precision,recall\n";
  for (const auto& p : report.points) {
    out += fmt::format("{},{},{},{},{},{},{:.6f},{:.6f}\n", to_string(report.channel), format_double(p.threshold),
                       p.counts.e, p.counts.f, p.counts.g, p.counts.h, p.precision, p.recall);
  }
  return out;
}

std::string render_ablation(const AblationReport& report) {
  std::string out;
  for (const auto* table : {&report.social_context, &report.social_relations}) {
    const bool ctx = table->channel == Channel::SocialContext;
    out += fmt::format("COMPARISON IN TERMS OF PRECISION AND RECALL FOR {} RECOMMENDATION\n",
                       ctx ? "SOCIAL CONTEXT" : "SOCIAL RELATIONS");
    out += fmt::format("{:<26}{:<20}{:<12}{}\n", "Algorithm", ctx ? "Highest Pearson" : "Highest Social Tie",
                       "Precision", "Recall");
    for (const auto& row : table->rows) {
      out += fmt::format("{:<26}{:<20}{:<12.6f}{:.6f}\n", row.scorer, format_double(row.threshold), row.precision,
                         row.recall);
    }
    out += '\n';
  }
  out += "Ablation rows switch off parts of the engine; they are not reimplementations of external baselines.\n";
  return out;
}

std::string render_evaluation(const EvaluationRun& run) {
  const auto& sw = run.sweep;
  std::string out;
  out += fmt::format("dataset            {}\n", sw.dataset_id);
  out += fmt::format("split seed         {}\n", sw.split_seed);
  out += fmt::format("evaluated pairs    {}\n", run.split.labels.size());
  out += fmt::format("relevant pairs     {}\n",
                     std::count_if(run.split.labels.begin(), run.split.labels.end(),
                                   [](const auto& kv) { return kv.second; }));
  out += fmt::format("held-out ratings   {}\n", run.split.held_out_ratings.size());
  out += fmt::format("held-out contacts  {}\n", run.split.held_out_contacts.size());
  out += fmt::format("swept              {} ({})\n", to_string(sw.channel),
                     sw.channel == Channel::SocialContext ? "gamma" : "beta");
  out += fmt::format("fixed thresholds   gamma={} beta={} delta={} frame_T={}\n", format_double(sw.fixed.gamma),
                     format_double(sw.fixed.beta), format_double(sw.fixed.delta), sw.fixed.frame_T);
  out += fmt::format("relevance          {}\n", kRelevanceRule);
  out += "convention         precision and recall are 0 when their denominator is 0\n\n";

  out += fmt::format("{:<12}{:>7}{:>7}{:>7}{:>7}{:>12}{:>12}\n", "threshold", "e", "f", "g", "h", "precision",
                     "recall");
  for (const auto& p : sw.points) {
    out += fmt::format("{:<12}{:>7}{:>7}{:>7}{:>7}{:>12.6f}{:>12.6f}\n", format_double(p.threshold), p.counts.e,
                       p.counts.f, p.counts.g, p.counts.h, p.precision, p.recall);
  }
  out += '\n';
  out += render_ablation(run.ablation);
  return out;
}

}  // namespace sarve

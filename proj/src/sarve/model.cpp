#include "sarve/model.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace sarve {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "validation failed";
  for (const auto& s : v) {
    out += "; ";
    out += s;
  }
  return out;
}

bool has_control_char(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return c < 0x20 || c == 0x7f; });
}

void check_identifier(std::vector<std::string>& out, std::string_view what, std::string_view id) {
  if (id.empty()) {
    out.push_back(fmt::format("{} id is empty", what));
  } else if (has_control_char(id)) {
    out.push_back(fmt::format("{} id '{}' contains control characters", what, id));
  } else if (id.front() == '#' || id.front() == '[') {
    // Would read back as a comment or section header.
    out.push_back(fmt::format("{} id '{}' starts with '#' or '['", what, id));
  }
}

void check_keyword(std::vector<std::string>& out, std::string_view what, std::string_view kw) {
  if (kw.empty()) {
    out.push_back(fmt::format("{} is empty", what));
    return;
  }
  if (normalize_keyword(kw) != kw) {
    out.push_back(fmt::format("{} '{}' is not normalized", what, kw));
  }
  if (has_control_char(kw) || kw.find(',') != std::string_view::npos) {
    out.push_back(fmt::format("{} '{}' contains a comma or control character", what, kw));
  }
}

void check_slot(std::vector<std::string>& out, std::string_view owner, const TimeSlot& s, int frame_T) {
  if (s.start < 0) {
    out.push_back(fmt::format("{}: time slot {}-{} starts before conference open", owner, s.start, s.end));
  }
  if (s.start >= s.end) {
    out.push_back(fmt::format("{}: time slot {}-{} is empty or reversed", owner, s.start, s.end));
  }
  if (s.end > frame_T) {
    out.push_back(
        fmt::format("{}: time slot {}-{} ends after frame length {}", owner, s.start, s.end, frame_T));
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

std::string normalize_keyword(std::string_view raw) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto first = std::find_if_not(raw.begin(), raw.end(), is_space);
  auto last = std::find_if_not(raw.rbegin(), raw.rend(), is_space).base();
  std::string out;
  if (first < last) out.assign(first, last);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

void RatingMatrix::erase_participant(const ParticipantId& p) {
  std::erase_if(entries_, [&](const auto& kv) { return kv.first.first == p; });
}

std::optional<int> RatingMatrix::get(const ParticipantId& p, const Tag& t) const {
  auto it = entries_.find({p, t});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Tag, int>> RatingMatrix::of(const ParticipantId& p) const {
  std::vector<std::pair<Tag, int>> out;
  // Entries are ordered by participant first, so one participant's ratings
  // form a contiguous run.
  for (auto it = entries_.lower_bound({p, Tag{}}); it != entries_.end() && it->first.first == p; ++it) {
    out.emplace_back(it->first.second, it->second);
  }
  return out;
}

void ContactLog::erase_participant(const ParticipantId& p) {
  std::erase_if(entries_, [&](const auto& kv) { return kv.first.first == p || kv.first.second == p; });
}

std::optional<Contact> ContactLog::get(const ParticipantId& a, const ParticipantId& b) const {
  auto it = entries_.find(key(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const Session* ConferenceInstance::find_session(const SessionId& id) const {
  for (const auto& s : sessions) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const AvailabilityContext* ConferenceInstance::availability_of(const ParticipantId& p) const {
  auto it = availabilities.find(p);
  return it == availabilities.end() ? nullptr : &it->second;
}

std::vector<std::string> validate_thresholds(const Thresholds& t) {
  std::vector<std::string> out;
  // Written as negated range checks so NaN fails every one of them.
  if (!(t.gamma >= -1.0 && t.gamma <= 1.0)) {
    out.push_back(fmt::format("gamma {} out of range [-1, 1]", t.gamma));
  }
  if (!(t.beta >= 0.0)) out.push_back(fmt::format("beta {} must be >= 0", t.beta));
  if (!(t.delta >= 0.0)) out.push_back(fmt::format("delta {} must be >= 0", t.delta));
  if (t.frame_T <= 0) out.push_back(fmt::format("frame_T {} must be > 0", t.frame_T));
  if (t.top_n < 1) out.push_back(fmt::format("top_n {} must be >= 1", t.top_n));
  return out;
}

std::vector<std::string> validate(const ConferenceInstance& conf) {
  std::vector<std::string> out = validate_thresholds(conf.thresholds);
  const int frame_T = conf.thresholds.frame_T;

  for (const auto& p : conf.roster) check_identifier(out, "participant", p.value);

  for (const auto& p : conf.presenters) {
    if (!conf.in_roster(p)) out.push_back(fmt::format("presenter '{}' is not in the roster", p.value));
  }

  std::set<SessionId> seen_sessions;
  for (const auto& s : conf.sessions) {
    check_identifier(out, "session", s.id.value);
    if (!seen_sessions.insert(s.id).second) {
      out.push_back(fmt::format("session id '{}' is duplicated", s.id.value));
    }
    if (!conf.presenters.count(s.presenter)) {
      out.push_back(fmt::format("session '{}': presenter '{}' is not a registered presenter", s.id.value,
                                s.presenter.value));
    }
    check_keyword(out, fmt::format("session '{}' location", s.id.value), s.location.venue);
    check_slot(out, fmt::format("session '{}'", s.id.value), s.slot, frame_T);
    for (const auto& t : s.topic_tags) check_keyword(out, fmt::format("session '{}' tag", s.id.value), t.keyword);
  }

  for (const auto& [key, rating] : conf.ratings.entries()) {
    const auto& [p, tag] = key;
    if (!conf.in_roster(p)) out.push_back(fmt::format("rating by unknown participant '{}'", p.value));
    check_keyword(out, fmt::format("rating tag of '{}'", p.value), tag.keyword);
    if (rating < kMinRating || rating > kMaxRating) {
      out.push_back(fmt::format("rating out of range: {} for ('{}', '{}'), expected {}..{}", rating, p.value,
                                tag.keyword, kMinRating, kMaxRating));
    }
  }

  for (const auto& [key, c] : conf.contacts.entries()) {
    const auto& [a, b] = key;
    if (a == b) out.push_back(fmt::format("contact of '{}' with itself", a.value));
    if (!(a < b) && a != b) out.push_back(fmt::format("contact key ('{}', '{}') is not canonical", a.value, b.value));
    for (const auto* p : {&a, &b}) {
      if (!conf.in_roster(*p)) out.push_back(fmt::format("contact references unknown participant '{}'", p->value));
    }
    if (c.frequency < 0 || c.duration < 0) {
      out.push_back(fmt::format("contact ('{}', '{}') has negative frequency or duration", a.value, b.value));
    }
    if ((c.frequency == 0) != (c.duration == 0)) {
      out.push_back(fmt::format("contact ('{}', '{}'): frequency {} and duration {} must be zero together",
                                a.value, b.value, c.frequency, c.duration));
    }
  }

  for (const auto& [owner, ctx] : conf.availabilities) {
    if (!conf.in_roster(owner)) {
      out.push_back(fmt::format("availability for unknown participant '{}'", owner.value));
    }
    if (ctx.owner != owner) {
      out.push_back(fmt::format("availability keyed by '{}' is owned by '{}'", owner.value, ctx.owner.value));
    }
    for (const auto& slot : ctx.slots) {
      check_keyword(out, fmt::format("availability location of '{}'", owner.value), slot.location.venue);
      check_slot(out, fmt::format("availability of '{}'", owner.value), slot.time, frame_T);
    }
  }

  return out;
}

void require_valid(const ConferenceInstance& conf) {
  auto v = validate(conf);
  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace sarve

#ifndef SARVE_MODEL_HPP
#define SARVE_MODEL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sarve {

// Thrown for precondition violations on engine operations (self-pairs, unknown
// ids, bad thresholds). The C API maps it to SARVE_E_INVALID_ARGUMENT.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Lowercases ASCII letters and trims surrounding whitespace. Idempotent.
std::string normalize_keyword(std::string_view raw);

struct ParticipantId {
  std::string value;

  ParticipantId() = default;
  explicit ParticipantId(std::string v) : value(std::move(v)) {}

  auto operator<=>(const ParticipantId&) const = default;
};

struct SessionId {
  std::string value;

  SessionId() = default;
  explicit SessionId(std::string v) : value(std::move(v)) {}

  auto operator<=>(const SessionId&) const = default;
};

// Tags and locations are stored in normalized form; equality is equality of
// the normalized strings.
struct Tag {
  std::string keyword;

  Tag() = default;
  explicit Tag(std::string_view raw) : keyword(normalize_keyword(raw)) {}

  auto operator<=>(const Tag&) const = default;
};

struct Location {
  std::string venue;

  Location() = default;
  explicit Location(std::string_view raw) : venue(normalize_keyword(raw)) {}

  auto operator<=>(const Location&) const = default;
};

/// Half-open interval of minutes since the conference opened.
struct TimeSlot {
  int start = 0;
  int end = 0;

  bool contains(const TimeSlot& other) const { return start <= other.start && other.end <= end; }
  auto operator<=>(const TimeSlot&) const = default;
};

struct Slot {
  Location location;
  TimeSlot time;

  auto operator<=>(const Slot&) const = default;
};

struct AvailabilityContext {
  ParticipantId owner;
  std::vector<Slot> slots;

  bool operator==(const AvailabilityContext&) const = default;
};

struct Session {
  SessionId id;
  ParticipantId presenter;
  Location location;
  TimeSlot slot;
  std::set<Tag> topic_tags;

  bool operator==(const Session&) const = default;
};

inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;

class RatingMatrix {
 public:
  using Key = std::pair<ParticipantId, Tag>;

  void set(const ParticipantId& p, const Tag& t, int rating) { entries_[{p, t}] = rating; }
  void erase(const ParticipantId& p, const Tag& t) { entries_.erase({p, t}); }
  void erase_participant(const ParticipantId& p);
  std::optional<int> get(const ParticipantId& p, const Tag& t) const;

  /// All (tag, rating) pairs of one participant, in tag order.
  std::vector<std::pair<Tag, int>> of(const ParticipantId& p) const;

  const std::map<Key, int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool operator==(const RatingMatrix&) const = default;

 private:
  std::map<Key, int> entries_;
};

struct Contact {
  int frequency = 0;  // lambda: number of meetings
  int duration = 0;   // total minutes in contact

  bool operator==(const Contact&) const = default;
};

/// Undirected contact log. Keys are stored with the smaller id first so that
/// lookups of (a, b) and (b, a) hit the same entry.
class ContactLog {
 public:
  using Key = std::pair<ParticipantId, ParticipantId>;

  static Key key(const ParticipantId& a, const ParticipantId& b) {
    return a < b ? Key{a, b} : Key{b, a};
  }

  void set(const ParticipantId& a, const ParticipantId& b, Contact c) { entries_[key(a, b)] = c; }
  void erase(const ParticipantId& a, const ParticipantId& b) { entries_.erase(key(a, b)); }
  void erase_participant(const ParticipantId& p);
  std::optional<Contact> get(const ParticipantId& a, const ParticipantId& b) const;

  const std::map<Key, Contact>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool operator==(const ContactLog&) const = default;

 private:
  std::map<Key, Contact> entries_;
};

struct Thresholds {
  double gamma = 1.0;   // Pearson gate, [-1, 1]
  double beta = 0.5;    // tie-strength gate, >= 0
  double delta = 0.5;   // normalized degree-centrality gate, >= 0
  int frame_T = 720;    // conference frame in minutes, > 0
  int top_n = 5;

  bool operator==(const Thresholds&) const = default;
};

/// Range violations of a threshold set; empty when valid.
std::vector<std::string> validate_thresholds(const Thresholds& t);

struct ConferenceInstance {
  std::set<ParticipantId> roster;
  std::set<ParticipantId> presenters;
  std::vector<Session> sessions;
  RatingMatrix ratings;
  ContactLog contacts;
  std::map<ParticipantId, AvailabilityContext> availabilities;
  Thresholds thresholds;

  bool in_roster(const ParticipantId& p) const { return roster.count(p) != 0; }
  const Session* find_session(const SessionId& id) const;
  const AvailabilityContext* availability_of(const ParticipantId& p) const;

  bool operator==(const ConferenceInstance&) const = default;
};

/// One human-readable entry per broken invariant. Never throws on bad data.
std::vector<std::string> validate(const ConferenceInstance& conf);

/// Throws ValidationError when validate() reports anything.
void require_valid(const ConferenceInstance& conf);

}  // namespace sarve

#endif  // SARVE_MODEL_HPP

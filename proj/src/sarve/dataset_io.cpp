#include "sarve/dataset_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "sarve/social_graph.hpp"

namespace sarve {

ParseError::ParseError(std::string source, int line, const std::string& message)
    : Error(fmt::format("{}:{}: {}", source, line, message)), line_(line) {}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_dataset_text(const ConferenceInstance& conf) {
  std::string out;
  auto line = [&out](auto&&... parts) {
    bool first = true;
    ((out += (first ? "" : "\t"), out += parts, first = false), ...);
    out += '\n';
  };

  line(std::string(kFormatMagic) + " v" + std::to_string(kFormatVersion));

  out += "[thresholds]\n";
  const auto& th = conf.thresholds;
  line("gamma", format_double(th.gamma));
  line("beta", format_double(th.beta));
  line("delta", format_double(th.delta));
  line("frame_T", std::to_string(th.frame_T));
  line("top_n", std::to_string(th.top_n));

  out += "[roster]\n";
  for (const auto& p : conf.roster) line(p.value);

  out += "[presenters]\n";
  for (const auto& p : conf.presenters) line(p.value);

  out += "[sessions]\n";
  for (const auto& s : conf.sessions) {
    std::string tags;
    for (const auto& t : s.topic_tags) {
      if (!tags.empty()) tags += ',';
      tags += t.keyword;
    }
    line(s.id.value, s.presenter.value, s.location.venue, std::to_string(s.slot.start),
         std::to_string(s.slot.end), tags);
  }

  out += "[ratings]\n";
  for (const auto& [key, r] : conf.ratings.entries()) line(key.first.value, key.second.keyword, std::to_string(r));

  out += "[contacts]\n";
  for (const auto& [key, c] : conf.contacts.entries()) {
    line(key.first.value, key.second.value, std::to_string(c.frequency), std::to_string(c.duration));
  }

  out += "[availability]\n";
  for (const auto& [owner, ctx] : conf.availabilities) {
    if (ctx.slots.empty()) line(owner.value);
    for (const auto& slot : ctx.slots) {
      line(owner.value, slot.location.venue, std::to_string(slot.time.start), std::to_string(slot.time.end));
    }
  }
  return out;
}

namespace {

enum class Section { None, Thresholds, Roster, Presenters, Sessions, Ratings, Contacts, Availability };

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

class Parser {
 public:
  Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(source_, line_, msg); }

  void set_line(int n) { line_ = n; }

  int to_int(std::string_view field, std::string_view what) const {
    int v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      fail(fmt::format("{}: expected an integer, got '{}'", what, field));
    }
    return v;
  }

  double to_double(std::string_view field, std::string_view what) const {
    double v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      fail(fmt::format("{}: expected a number, got '{}'", what, field));
    }
    return v;
  }

  void expect_fields(const std::vector<std::string_view>& f, std::size_t n, std::string_view section) const {
    if (f.size() != n) fail(fmt::format("[{}] record needs {} tab-separated fields, got {}", section, n, f.size()));
  }

  void non_empty(std::string_view field, std::string_view what) const {
    if (field.empty()) fail(fmt::format("{} is empty", what));
  }

 private:
  std::string source_;
  int line_ = 0;
};

}  // namespace

ConferenceInstance parse_dataset(std::string_view text, std::string_view source) {
  Parser ps(source);
  ConferenceInstance conf;
  Section section = Section::None;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_threshold_keys;
  bool header_seen = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    ps.set_line(line_no);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    if (!header_seen) {
      const std::string expected = fmt::format("{} v{}", kFormatMagic, kFormatVersion);
      if (line.substr(0, kFormatMagic.size()) != kFormatMagic) {
        ps.fail(fmt::format("missing header line '{}'", expected));
      }
      if (line != expected) ps.fail(fmt::format("unsupported format header '{}', expected '{}'", line, expected));
      header_seen = true;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') ps.fail(fmt::format("malformed section header '{}'", line));
      std::string name(line.substr(1, line.size() - 2));
      if (name == "thresholds") section = Section::Thresholds;
      else if (name == "roster") section = Section::Roster;
      else if (name == "presenters") section = Section::Presenters;
      else if (name == "sessions") section = Section::Sessions;
      else if (name == "ratings") section = Section::Ratings;
      else if (name == "contacts") section = Section::Contacts;
      else if (name == "availability") section = Section::Availability;
      else ps.fail(fmt::format("unknown section [{}]", name));
      if (!seen_sections.insert(name).second) ps.fail(fmt::format("section [{}] appears twice", name));
      continue;
    }

    const auto f = split(line, '\t');
    switch (section) {
      case Section::None:
        ps.fail("record outside of any section");

      case Section::Thresholds: {
        ps.expect_fields(f, 2, "thresholds");
        const std::string key(f[0]);
        if (!seen_threshold_keys.insert(key).second) ps.fail(fmt::format("threshold '{}' given twice", key));
        auto& th = conf.thresholds;
        if (key == "gamma") th.gamma = ps.to_double(f[1], key);
        else if (key == "beta") th.beta = ps.to_double(f[1], key);
        else if (key == "delta") th.delta = ps.to_double(f[1], key);
        else if (key == "frame_T") th.frame_T = ps.to_int(f[1], key);
        else if (key == "top_n") th.top_n = ps.to_int(f[1], key);
        else ps.fail(fmt::format("unknown threshold '{}'", key));
        break;
      }

      case Section::Roster:
      case Section::Presenters: {
        const char* name = section == Section::Roster ? "roster" : "presenters";
        ps.expect_fields(f, 1, name);
        ps.non_empty(f[0], "participant id");
        auto& target = section == Section::Roster ? conf.roster : conf.presenters;
        if (!target.emplace(std::string(f[0])).second) {
          ps.fail(fmt::format("[{}] lists '{}' twice", name, f[0]));
        }
        break;
      }

      case Section::Sessions: {
        ps.expect_fields(f, 6, "sessions");
        ps.non_empty(f[0], "session id");
        Session s;
        s.id = SessionId(std::string(f[0]));
        s.presenter = ParticipantId(std::string(f[1]));
        s.location = Location(f[2]);
        s.slot = TimeSlot{ps.to_int(f[3], "session start"), ps.to_int(f[4], "session end")};
        if (!f[5].empty()) {
          for (auto t : split(f[5], ',')) {
            Tag tag(t);
            if (tag.keyword.empty()) ps.fail(fmt::format("session '{}' has an empty tag", f[0]));
            s.topic_tags.insert(std::move(tag));
          }
        }
        conf.sessions.push_back(std::move(s));
        break;
      }

      case Section::Ratings: {
        ps.expect_fields(f, 3, "ratings");
        ParticipantId p{std::string(f[0])};
        Tag tag(f[1]);
        if (tag.keyword.empty()) ps.fail(fmt::format("rating by '{}' has an empty tag", f[0]));
        const int r = ps.to_int(f[2], "rating");
        if (r < kMinRating || r > kMaxRating) {
          ps.fail(fmt::format("rating out of range: {} for ('{}', '{}'), expected {}..{}", r, f[0], tag.keyword,
                              kMinRating, kMaxRating));
        }
        if (conf.ratings.get(p, tag)) ps.fail(fmt::format("duplicate rating for ('{}', '{}')", f[0], tag.keyword));
        conf.ratings.set(p, tag, r);
        break;
      }

      case Section::Contacts: {
        ps.expect_fields(f, 4, "contacts");
        ParticipantId a{std::string(f[0])}, b{std::string(f[1])};
        if (a == b) ps.fail(fmt::format("contact of '{}' with itself", f[0]));
        Contact c{ps.to_int(f[2], "contact frequency"), ps.to_int(f[3], "contact duration")};
        if (c.frequency < 0 || c.duration < 0) ps.fail("contact frequency and duration must be non-negative");
        if (conf.contacts.get(a, b)) ps.fail(fmt::format("duplicate contact for ('{}', '{}')", f[0], f[1]));
        conf.contacts.set(a, b, c);
        break;
      }

      case Section::Availability: {
        if (f.size() != 1 && f.size() != 4) {
          ps.fail(fmt::format("[availability] record needs 1 or 4 tab-separated fields, got {}", f.size()));
        }
        ParticipantId owner{std::string(f[0])};
        ps.non_empty(f[0], "participant id");
        auto& ctx = conf.availabilities[owner];
        ctx.owner = owner;
        if (f.size() == 4) {
          ctx.slots.push_back(Slot{Location(f[1]), TimeSlot{ps.to_int(f[2], "availability start"),
                                                            ps.to_int(f[3], "availability end")}});
        }
        break;
      }
    }
  }
  if (!header_seen) {
    ps.set_line(line_no);
    ps.fail(fmt::format("missing header line '{} v{}'", kFormatMagic, kFormatVersion));
  }
  return conf;
}

ConferenceInstance read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path.string()));
  return parse_dataset(buf.str(), path.string());
}

ConferenceInstance load(const std::filesystem::path& path) {
  auto conf = read_dataset(path);
  require_valid(conf);
  return conf;
}

void save(const ConferenceInstance& conf, const std::filesystem::path& path) {
  const std::string text = to_dataset_text(conf);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError(fmt::format("error writing '{}'", path.string()));
}

std::string dataset_id(const ConferenceInstance& conf) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_dataset_text(conf)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string ratings_csv(const ConferenceInstance& conf) {
  std::string out = "participant,tag,rating\n";
  for (const auto& [key, r] : conf.ratings.entries()) {
    out += fmt::format("{},{},{}\n", csv_field(key.first.value), csv_field(key.second.keyword), r);
  }
  return out;
}

std::string contacts_csv(const ConferenceInstance& conf) {
  std::string out = "participant_a,participant_b,frequency,duration,tie_strength\n";
  for (const auto& [key, c] : conf.contacts.entries()) {
    out += fmt::format("{},{},{},{},{:.6f}\n", csv_field(key.first.value), csv_field(key.second.value), c.frequency,
                       c.duration, tie_strength(c.frequency, c.duration, conf.thresholds.frame_T));
  }
  return out;
}

}  // namespace sarve

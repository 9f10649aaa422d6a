#ifndef SARVE_SERVICE_HPP
#define SARVE_SERVICE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "sarve/model.hpp"
#include "sarve/recommender.hpp"

namespace httplib {
class Server;
}

namespace sarve {

/// Immutable, versioned pairing of an instance with its recommendations.
struct EngineSnapshot {
  std::uint64_t version = 0;
  ConferenceInstance conf;
  RecommendationSet recommendations;
};

struct ServiceOptions {
  // When set, every accepted write is also saved here.
  std::optional<std::filesystem::path> save_path;
  bool log_requests = true;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Recommendation service. Readers work on whichever snapshot is current when
/// they start; writers are serialized, build a new instance, validate it,
/// recompute and swap the snapshot pointer. Handler methods are usable
/// without the HTTP layer.
class Service {
 public:
  explicit Service(ConferenceInstance conf, ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  std::shared_ptr<const EngineSnapshot> snapshot() const;

  Response get_sessions() const;
  Response get_participants() const;
  Response get_recommendations(const std::string& participant, const QueryParams& query) const;
  Response get_centrality(const std::string& presenter) const;

  // PUT bodies may carry "expected_version"; a mismatch yields 409. The
  // if_match argument, when present, carries the same check from a header.
  Response put_ratings(const std::string& participant, const std::string& body,
                       std::optional<std::string> if_match = std::nullopt);
  Response put_availability(const std::string& participant, const std::string& body,
                            std::optional<std::string> if_match = std::nullopt);
  Response put_contacts(const std::string& participant, const std::string& body,
                        std::optional<std::string> if_match = std::nullopt);

  /// Binds the HTTP listener; port 0 picks a free port. Returns the bound
  /// port or -1.
  int bind(const std::string& host, int port);

  /// Serves until stop(). Call after bind().
  bool run();
  void stop();

 private:
  template <typename Mutate>
  Response write(const std::string& participant, const std::string& body, const std::optional<std::string>& if_match,
                 Mutate&& mutate);

  void publish(std::shared_ptr<const EngineSnapshot> next);
  void install_routes();

  ServiceOptions options_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const EngineSnapshot> current_;
  std::mutex write_mutex_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace sarve

#endif  // SARVE_SERVICE_HPP

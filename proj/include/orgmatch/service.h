// Copyright 2026 The orgmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ORGMATCH_SERVICE_H_
#define ORGMATCH_SERVICE_H_

#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <thread>

#include "json.hpp"
#include "orgmatch/match.h"
#include "orgmatch/registry.h"
#include "orgmatch/segment.h"

namespace httplib {
class Server;
}

namespace orgmatch {

// The response document shared by the HTTP endpoint and the CLI.
nlohmann::json BuildMatchResponse(const MatchResult &result, const RegistryIndex &index, const PipelineParams &params,
                                  bool include_trace = false);

struct MatchRequest {
  std::string affiliation;
  PipelineParams params;
};

// Thrown for a request the service must reject with a 4xx status.
class RequestError : public std::runtime_error {
 public:
  RequestError(int status, std::string field, const std::string &what)
      : std::runtime_error(what), status_(status), field_(std::move(field)) {}
  int status() const { return status_; }
  const std::string &field() const { return field_; }

 private:
  int status_;
  std::string field_;
};

// Validates a /match body against the defaults. Affiliation length is
// counted in code points.
MatchRequest ParseMatchRequest(const nlohmann::json &body, const PipelineParams &defaults, size_t max_chars);

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  size_t max_affiliation_chars = 2048;
  PipelineParams defaults;
  MatchOptions match_options;
};

struct HttpReply {
  int status = 200;
  nlohmann::json body;
};

// POST /match and GET /health over one immutable index. The index is
// published once through an atomic pointer; requests never take a lock.
class MatchService {
 public:
  explicit MatchService(ServiceOptions options = {});
  ~MatchService();
  MatchService(const MatchService &) = delete;
  MatchService &operator=(const MatchService &) = delete;

  // May be called once; until then /health reports "loading" and /match
  // answers 503.
  void SetIndex(std::shared_ptr<const RegistryIndex> index);

  HttpReply HandleMatch(const std::string &body) const;
  HttpReply HandleHealth() const;

  // Binds and serves on a background thread. Returns false if binding
  // fails.
  bool Start();
  // Serves on the calling thread until Stop().
  bool Run();
  // Blocks until a server started with Start() stops.
  void Wait();
  void Stop();
  int port() const { return bound_port_; }

 private:
  bool Bind();

  ServiceOptions options_;
  std::shared_ptr<const RegistryIndex> owner_;
  std::atomic<const RegistryIndex *> index_{nullptr};
  std::chrono::steady_clock::time_point started_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int bound_port_ = 0;
};

}  // namespace orgmatch

#endif  // ORGMATCH_SERVICE_H_

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

#include "orgmatch/service.h"

#include "httplib.h"
#include "orgmatch/error.h"

namespace orgmatch {

using nlohmann::json;

namespace {

size_t CodePoints(const std::string &s) {
  size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

json ErrorBody(const std::string &message, const std::string &field = "") {
  json j = {{"error", message}};
  if (!field.empty()) j["field"] = field;
  return j;
}

}  // namespace

json BuildMatchResponse(const MatchResult &result, const RegistryIndex &index, const PipelineParams &params,
                        bool include_trace) {
  json matches = json::array();
  for (const auto &m : result.matches) matches.push_back({{"id", m.id}, {"name", m.name}, {"confidence", m.confidence}});
  json j = {{"matches", std::move(matches)},
            {"registry_version", index.version_tag()},
            {"params_used", params.ToJson()}};
  if (include_trace) j["trace"] = result.ToJson(true)["trace"];
  return j;
}

MatchRequest ParseMatchRequest(const json &body, const PipelineParams &defaults, size_t max_chars) {
  if (!body.is_object()) throw RequestError(400, "", "request body must be a JSON object");
  MatchRequest req;
  req.params = defaults;
  for (const auto &[key, value] : body.items()) {
    if (key == "affiliation") {
      if (!value.is_string()) throw RequestError(400, key, "affiliation must be a string");
      req.affiliation = value.get<std::string>();
    } else if (key == "window") {
      if (!value.is_number_integer()) throw RequestError(400, key, "window must be an integer");
      req.params.window = value.get<int>();
    } else if (key == "sim_u" || key == "sim_o") {
      if (!value.is_number()) throw RequestError(400, key, key + " must be a number");
      (key == "sim_u" ? req.params.sim_u : req.params.sim_o) = value.get<double>();
    } else if (key == "specific") {
      if (!value.is_boolean()) throw RequestError(400, key, "specific must be a boolean");
      req.params.specific = value.get<bool>();
    } else {
      throw RequestError(400, key, "unknown field '" + key + "'");
    }
  }
  if (!body.contains("affiliation")) throw RequestError(400, "affiliation", "affiliation is required");
  if (CodePoints(req.affiliation) > max_chars) {
    throw RequestError(413, "affiliation", "affiliation exceeds " + std::to_string(max_chars) + " characters");
  }
  try {
    req.params.Validate();
  } catch (const UsageError &e) {
    std::string what = e.what();
    throw RequestError(400, what.substr(0, what.find(' ')), what);
  }
  return req;
}

MatchService::MatchService(ServiceOptions options)
    : options_(std::move(options)), started_(std::chrono::steady_clock::now()) {}

MatchService::~MatchService() { Stop(); }

void MatchService::SetIndex(std::shared_ptr<const RegistryIndex> index) {
  if (owner_ != nullptr) throw UsageError("service index is already set");
  owner_ = std::move(index);
  index_.store(owner_.get(), std::memory_order_release);
}

HttpReply MatchService::HandleMatch(const std::string &body) const {
  const RegistryIndex *index = index_.load(std::memory_order_acquire);
  if (index == nullptr) return {503, ErrorBody("index is loading")};
  json parsed;
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error &e) {
    return {400, ErrorBody(std::string("malformed JSON: ") + e.what())};
  }
  try {
    MatchRequest req = ParseMatchRequest(parsed, options_.defaults, options_.max_affiliation_chars);
    MatchResult result = MatchString(req.affiliation, *index, req.params, options_.match_options);
    return {200, BuildMatchResponse(result, *index, req.params)};
  } catch (const RequestError &e) {
    return {e.status(), ErrorBody(e.what(), e.field())};
  } catch (const std::exception &e) {
    return {500, ErrorBody(std::string("internal error: ") + e.what())};
  }
}

HttpReply MatchService::HandleHealth() const {
  const RegistryIndex *index = index_.load(std::memory_order_acquire);
  double uptime = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  json j = {{"status", index != nullptr ? "ready" : "loading"}, {"uptime_seconds", uptime}};
  j["registry_version"] = index != nullptr ? json(index->version_tag()) : json(nullptr);
  return {200, std::move(j)};
}

bool MatchService::Bind() {
  server_ = std::make_unique<httplib::Server>();
  auto reply = [](httplib::Response &res, const HttpReply &r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Post("/match", [this, reply](const httplib::Request &req, httplib::Response &res) {
    reply(res, HandleMatch(req.body));
  });
  server_->Get("/health", [this, reply](const httplib::Request &, httplib::Response &res) {
    reply(res, HandleHealth());
  });
  server_->set_exception_handler([](const httplib::Request &, httplib::Response &res, std::exception_ptr) {
    res.status = 500;
    res.set_content(ErrorBody("internal error").dump(), "application/json");
  });
  if (options_.port == 0) {
    bound_port_ = server_->bind_to_any_port(options_.host);
    return bound_port_ > 0;
  }
  if (!server_->bind_to_port(options_.host, options_.port)) return false;
  bound_port_ = options_.port;
  return true;
}

bool MatchService::Start() {
  if (!Bind()) return false;
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return true;
}

bool MatchService::Run() {
  if (!Bind()) return false;
  return server_->listen_after_bind();
}

void MatchService::Wait() {
  if (thread_.joinable()) thread_.join();
}

void MatchService::Stop() {
  if (server_ != nullptr) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace orgmatch

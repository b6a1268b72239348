// Copyright 2026 The typeslice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include <mutex>
#include <regex>

#include "common/errors.h"
#include "inference/inference.h"

namespace typeslice {

namespace {

class RemoteBackend : public InferenceBackend {
 public:
  RemoteBackend(const std::string& base_url, RemoteOptions options) : options_(options) {
    static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(base_url, m, url_re)) throw BackendUnavailable("invalid backend URL '" + base_url + "'");
    origin_ = m[1].str();
    prefix_ = m[2].str();
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }

  BackendContract contract() override {
    std::lock_guard lock(mutex_);
    if (!contract_) {
      Json reply = exchange("GET", "/health", "", -1);
      try {
        contract_ = contract_from_json(reply);
      } catch (const FormatError& e) {
        throw BackendUnavailable(origin_ + prefix_ + "/health: " + e.what());
      }
    }
    return *contract_;
  }

  std::vector<ItemResult> infer_batch(const std::vector<RequestItem>& items) override {
    const int batch_id = -1;  // attached by the caller
    Json reply = exchange("POST", "/infer", request_to_json(items).dump(), batch_id);
    std::vector<ItemResult> results = results_from_json(reply, batch_id);
    if (results.size() != items.size()) {
      throw MalformedOutput("expected " + std::to_string(items.size()) + " results, got " +
                                std::to_string(results.size()),
                            batch_id);
    }
    return results;
  }

 private:
  Json exchange(const std::string& method, const std::string& path, const std::string& body, int batch_id) {
    httplib::Client client(origin_);
    client.set_connection_timeout(std::chrono::milliseconds(options_.connect_timeout_ms));
    client.set_read_timeout(std::chrono::milliseconds(options_.read_timeout_ms));
    client.set_write_timeout(std::chrono::milliseconds(options_.read_timeout_ms));
    std::string url = prefix_ + path;
    httplib::Result res = method == "GET" ? client.Get(url) : client.Post(url, body, "application/json");
    std::string where = origin_ + url;
    if (!res) throw BackendUnavailable(where + ": " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
      std::string detail;
      try {
        detail = Json::parse(res->body).at("error").get<std::string>();
      } catch (const Json::exception&) {
        detail = res->body.substr(0, 200);
      }
      throw BackendUnavailable(where + ": HTTP " + std::to_string(res->status) + ": " + detail);
    }
    try {
      return Json::parse(res->body);
    } catch (const Json::parse_error& e) {
      throw MalformedOutput(where + ": reply is not JSON: " + e.what(), batch_id);
    }
  }

  RemoteOptions options_;
  std::string origin_;
  std::string prefix_;
  std::mutex mutex_;
  std::optional<BackendContract> contract_;
};

}  // namespace

std::unique_ptr<InferenceBackend> make_remote_backend(const std::string& base_url, RemoteOptions options) {
  return std::make_unique<RemoteBackend>(base_url, options);
}

}  // namespace typeslice

// Copyright 2026 The bioann Authors
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

// REST front end.
//
//   POST /plain   {"text": "..."}            -> result
//   POST /pmid    {"pmids": ["123", ...]}    -> [{"pmid", "status", "result"?, "error"?}]
//   GET  /health                             -> {"status", "pipeline_version", "backend",
//                                                "backend_ok", "cache_records"}
//
// Errors are {"error": "..."} with 400 for bad requests and 503 when the
// tagging backend is down.

#ifndef BIOANN_SERVICE_H_
#define BIOANN_SERVICE_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "bioann/ingest.h"
#include "bioann/pipeline.h"
#include "bioann/store.h"

namespace httplib {
class Server;
}

namespace bioann {

inline constexpr const char* kAddrEnv = "BIOANN_ADDR";
inline constexpr const char* kConfigEnv = "BIOANN_CONFIG";
inline constexpr std::size_t kMaxPmidsPerRequest = 100;

struct HttpReply {
  int status = 200;
  std::string body;
};

std::string error_body(std::string_view message);

// Request handling without the transport, so it can be exercised directly.
class AnnotationService {
 public:
  // store and fetcher may be null; /pmid then reports per-item errors.
  AnnotationService(std::shared_ptr<const Pipeline> pipeline,
                    std::shared_ptr<AnnotationStore> store,
                    std::shared_ptr<const AbstractFetcher> fetcher);

  HttpReply plain(std::string_view body) const;
  HttpReply pmid(std::string_view body) const;
  HttpReply health() const;

  const Pipeline& pipeline() const { return *pipeline_; }

 private:
  std::shared_ptr<const Pipeline> pipeline_;
  std::shared_ptr<AnnotationStore> store_;
  std::shared_ptr<const AbstractFetcher> fetcher_;
};

struct ListenAddress {
  std::string host;
  int port = 0;
};

// "host:port" or ":port". Throws ConfigError.
ListenAddress parse_listen_address(std::string_view addr);

class HttpServer {
 public:
  explicit HttpServer(const AnnotationService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port. Throws
  // IoFailure.
  int bind(const ListenAddress& addr);
  // Serves on the calling thread until stop().
  void run();
  // Serves on a background thread.
  void start();
  // Stops accepting and waits for in-flight requests.
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread worker_;
};

}  // namespace bioann

#endif  // BIOANN_SERVICE_H_

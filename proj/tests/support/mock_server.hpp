// Copyright 2026 The httpdsl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HTTPDSL_TESTS_SUPPORT_MOCK_SERVER_HPP_
#define HTTPDSL_TESTS_SUPPORT_MOCK_SERVER_HPP_

#include <memory>
#include <string>
#include <vector>

namespace httpdsl::testing {

// An in-process HTTP server on 127.0.0.1 with a fixed set of routes:
//
//   GET    /ping            200 "pong"
//   GET    /users           200 JSON user list
//   GET    /echo            200 JSON {method, target, headers, body}
//   POST   /submit          201 echoes the request body;
//                           X-Echo-Content-Type carries the received type
//   PUT    /submit          200 same echo
//   DELETE /items/<n>       204 no body
//   GET    /status/<code>   responds with <code>; 3xx codes carry
//                           "Location: /moved-elsewhere"
//   GET    /delay/<ms>      sleeps <ms>, then 200 "slow pong"
//   GET    /private         200 under basic auth ada/lovelace, else 401
//   anything else           404 "not found"
//
// Every request is recorded as "METHOD <target>".
class LocalServer {
 public:
  LocalServer();
  ~LocalServer();

  LocalServer(const LocalServer&) = delete;
  LocalServer& operator=(const LocalServer&) = delete;

  bool running() const;
  int port() const;
  std::string host_port() const;  // "127.0.0.1:<port>"

  std::vector<std::string> seen() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// A recording HTTP forward proxy on 127.0.0.1: accepts absolute-form
// requests, re-issues them upstream, and relays the response.
class RecordingProxy {
 public:
  RecordingProxy();
  ~RecordingProxy();

  RecordingProxy(const RecordingProxy&) = delete;
  RecordingProxy& operator=(const RecordingProxy&) = delete;

  bool running() const;
  int port() const;
  std::string host() const;  // "127.0.0.1"

  // Absolute-form targets forwarded so far, oldest first.
  std::vector<std::string> forwarded() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Binds a fresh 127.0.0.1 port, then closes it and returns the number: an
// address that refuses connections, for unreachable-endpoint tests.
int closed_port();

}  // namespace httpdsl::testing

#endif  // HTTPDSL_TESTS_SUPPORT_MOCK_SERVER_HPP_

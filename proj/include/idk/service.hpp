#pragma once

// HTTP surface: POST /v1/fallback and GET /v1/health, plus the client side of
// the external parser contract (POST plain text, receive CoNLL-U).

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "idk/conllu.hpp"
#include "idk/engine.hpp"
#include "idk/error.hpp"

namespace idk {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

inline ParsedUrl split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("parser URL '" + url + "' lacks a scheme");
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

// Sends `text` to the parser service and returns its single parsed sentence.
inline Sentence parse_with_service(const std::string& parser_url, const std::string& text, int timeout_seconds = 10) {
  const auto url = split_url(parser_url);
  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  const auto res = client.Post(url.path, text, "text/plain");
  if (!res) throw ParserBackendError("parser at " + parser_url + " unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw ParserBackendError("parser at " + parser_url + " answered HTTP " + std::to_string(res->status));
  }
  auto sentences = read_conllu(res->body);
  if (sentences.size() != 1) {
    throw ParserBackendError("parser returned " + std::to_string(sentences.size()) + " sentences, expected 1");
  }
  validate(sentences.front());
  return std::move(sentences.front());
}

struct ServiceReply {
  int status = 200;
  nlohmann::json body;
};

inline nlohmann::json error_body(std::string_view kind, std::string_view message) {
  return nlohmann::json{{"error", kind}, {"message", message}};
}

// Request handling without the transport, shared by the server and the tests.
//
// Body: {"conllu": "..."} or {"text": "..."}, optional "counter". Without a
// counter the service assigns the next value of its request counter, so a
// restarted service replaying the same sequence gives the same responses.
class FallbackService {
 public:
  FallbackService(Engine engine, std::optional<std::string> parser_url)
      : engine_(std::move(engine)), parser_url_(std::move(parser_url)) {}

  ServiceReply handle(const std::string& request_body) {
    nlohmann::json req;
    try {
      req = nlohmann::json::parse(request_body);
    } catch (const nlohmann::json::exception&) {
      return {400, error_body("bad_request", "body is not JSON")};
    }
    if (!req.is_object()) return {400, error_body("bad_request", "body must be a JSON object")};
    const bool has_text = req.contains("text");
    const bool has_conllu = req.contains("conllu");
    if (has_text == has_conllu) return {400, error_body("bad_request", "give exactly one of 'text' or 'conllu'")};
    const auto& payload = has_text ? req.at("text") : req.at("conllu");
    if (!payload.is_string()) return {400, error_body("bad_request", "input must be a string")};

    std::optional<std::uint64_t> counter;
    if (req.contains("counter")) {
      if (!req.at("counter").is_number_unsigned()) return {400, error_body("bad_request", "counter must be a non-negative integer")};
      counter = req.at("counter").get<std::uint64_t>();
    }

    Sentence sentence;
    if (has_conllu) {
      try {
        auto sentences = read_conllu(payload.get<std::string>());
        if (sentences.size() != 1) {
          return {422, error_body("unparseable_conllu", "expected one sentence, got " + std::to_string(sentences.size()))};
        }
        validate(sentences.front());
        sentence = std::move(sentences.front());
      } catch (const Error& e) {
        return {422, error_body("unparseable_conllu", e.what())};
      }
    } else {
      if (!parser_url_) return {400, error_body("bad_request", "'text' input needs a parser URL; send 'conllu' instead")};
      try {
        sentence = parse_with_service(*parser_url_, payload.get<std::string>());
      } catch (const Error& e) {
        return {502, error_body(e.kind(), e.what())};
      }
    }

    const std::uint64_t used = counter ? *counter : next_counter_.fetch_add(1);
    nlohmann::json body = to_json(engine_.respond(sentence, used));
    body["counter"] = used;
    return {200, std::move(body)};
  }

  nlohmann::json health() const {
    return nlohmann::json{{"status", "ok"},
                          {"engine_version", kEngineVersion},
                          {"template_hash", engine_.pool().fingerprint()},
                          {"templates", engine_.pool().size()}};
  }

  void install(httplib::Server& server) {
    server.Post("/v1/fallback", [this](const httplib::Request& req, httplib::Response& res) {
      const auto reply = handle(req.body);
      res.status = reply.status;
      res.set_content(reply.body.dump(), "application/json");
    });
    server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(health().dump(), "application/json");
    });
  }

 private:
  Engine engine_;
  std::optional<std::string> parser_url_;
  std::atomic<std::uint64_t> next_counter_{0};
};

}  // namespace idk

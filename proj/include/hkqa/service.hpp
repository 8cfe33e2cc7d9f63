#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "httplib.h"
#include "json.hpp"

#include "hkqa/answering.hpp"

namespace hkqa::service {

struct Response {
  int status = 200;
  nlohmann::json body;
};

inline nlohmann::json stats_json(const CorpusStats& s) {
  return {{"documents", s.documents},
          {"sentences", s.sentences},
          {"clauses", s.clauses},
          {"mentions", s.mentions},
          {"entities", s.entities}};
}

inline Response handle_health(const Engine& engine) {
  return {200, {{"status", "ok"}, {"stats", stats_json(engine.graph.stats())}}};
}

namespace detail {

inline std::string incident_id() {
  static std::atomic<std::uint64_t> counter{0};
  auto t = static_cast<std::uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
  std::uint64_t x = t ^ (++counter * 0x9E3779B97F4A7C15ull);
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

inline Response bad_request(const std::string& why) { return {400, {{"error", why}}}; }

}  // namespace detail

/// Request body: {"question": str, "base_threshold"?, "pred_align_threshold"?,
/// "free_threshold"?, "top_docs"?, "top_gst"?}. Responds with the answer record.
inline Response handle_ask(const Engine& engine, const PipelineConfig& defaults, const std::string& body) {
  nlohmann::json req;
  try {
    req = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    return detail::bad_request("request body is not valid JSON");
  }
  if (!req.is_object()) return detail::bad_request("request body must be a JSON object");
  if (!req.contains("question") || !req["question"].is_string()) {
    return detail::bad_request("missing string field 'question'");
  }
  auto question = req["question"].get<std::string>();
  if (text::normalize(question).empty()) return detail::bad_request("question is empty");

  PipelineConfig config = defaults;
  for (const char* key : {"base_threshold", "pred_align_threshold"}) {
    if (!req.contains(key)) continue;
    if (!req[key].is_number()) return detail::bad_request(std::string("'") + key + "' must be a number");
    double v = req[key].get<double>();
    (std::string_view(key) == "base_threshold" ? config.thresholds.base : config.thresholds.predicate_alignment) = v;
  }
  for (const char* key : {"top_docs", "top_gst"}) {
    if (!req.contains(key)) continue;
    const auto& v = req[key];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) return detail::bad_request(std::string("'") + key + "' must be a positive integer");
    (std::string_view(key) == "top_docs" ? config.top_docs : config.top_gst) = req[key].get<std::size_t>();
  }
  if (req.contains("free_threshold")) {
    if (!req["free_threshold"].is_boolean()) return detail::bad_request("'free_threshold' must be a boolean");
    config.free_threshold = req["free_threshold"].get<bool>();
  }
  try {
    config.validate();
  } catch (const Error& e) {
    return detail::bad_request(e.what());
  }

  try {
    return {200, to_json(answer_question(question, engine, config))};
  } catch (const std::exception& e) {
    auto id = detail::incident_id();
    std::cerr << "ask failed [" << id << "]: " << e.what() << "\n";
    return {500, {{"error", "internal error"}, {"id", id}}};
  }
}

/// POST /ask and GET /health over shared read-only engine state.
inline void install_routes(httplib::Server& server, const Engine& engine, const PipelineConfig& defaults) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Post("/ask", [&engine, defaults, send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_ask(engine, defaults, req.body));
  });
  server.Get("/health", [&engine, send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_health(engine));
  });
  server.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    auto id = detail::incident_id();
    std::cerr << "request failed [" << id << "]\n";
    send(res, {500, {{"error", "internal error"}, {"id", id}}});
  });
}

}  // namespace hkqa::service

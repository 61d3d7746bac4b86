#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "httplib.h"
#include "json.hpp"
#include "staffcast/error.hpp"
#include "staffcast/evaluation.hpp"
#include "staffcast/forecast.hpp"
#include "staffcast/json_io.hpp"
#include "staffcast/selector.hpp"

namespace staffcast {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline int http_status_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidRequest:
    case ErrorCode::MalformedRow:
    case ErrorCode::EmptyInput:
    case ErrorCode::LengthMismatch:
    case ErrorCode::SchemaViolation:
      return 400;
    case ErrorCode::NotFound:
    case ErrorCode::UnknownCategory:
    case ErrorCode::RowOutOfRange:
      return 404;
    case ErrorCode::IoError:
    case ErrorCode::Internal:
      return 500;
    default:
      return 422;
  }
}

struct HttpResult {
  int status = 200;
  nlohmann::json body;
};

inline HttpResult error_result(ErrorCode code, const std::string& message) {
  return {http_status_for(code),
          {{"error", {{"code", std::string(code_name(code))}, {"message", message}}}}};
}

/// Catalog and decision matrix as loaded at one point in time.
struct Snapshot {
  std::vector<Approach> catalog;
  MatrixConfig matrix;
};

/// JSON API over the engine. Requests are answered from an immutable
/// snapshot; reload() swaps in a new one (single writer), so a request sees
/// either the old or the new snapshot in full.
class Service {
 public:
  struct Options {
    std::optional<std::string> catalog_path;  // default catalog when unset
    std::optional<std::string> matrix_path;   // default matrix when unset
  };

  explicit Service(Options options = {}) : options_(std::move(options)) { reload(); }

  // STAFFCAST_CATALOG overrides an unset catalog path.
  static Options options_from_env(Options options) {
    if (!options.catalog_path) {
      if (const char* env = std::getenv("STAFFCAST_CATALOG"); env != nullptr && *env != '\0') {
        options.catalog_path = env;
      }
    }
    return options;
  }

  void reload() {
    std::lock_guard writer(reload_mutex_);
    auto next = std::make_shared<Snapshot>();
    next->catalog = options_.catalog_path ? load_catalog(read_text_file(*options_.catalog_path))
                                          : default_catalog();
    if (options_.matrix_path) next->matrix = load_matrix(read_text_file(*options_.matrix_path));
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(next);
  }

  std::shared_ptr<const Snapshot> snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return snapshot_;
  }

  /// Routes one request. Never throws; failures become JSON error bodies.
  HttpResult handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      return route(method, path, body);
    } catch (const Error& e) {
      return error_result(e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
      return error_result(ErrorCode::InvalidRequest, e.what());
    } catch (const std::exception& e) {
      return error_result(ErrorCode::Internal, e.what());
    }
  }

  void mount(httplib::Server& server) {
    auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
      const auto result = handle(req.method, req.path, req.body);
      res.status = result.status;
      res.set_content(result.body.dump(), "application/json");
    };
    server.Get(R"(/api/v1/.*)", bridge);
    server.Post(R"(/api/v1/.*)", bridge);
  }

 private:
  static constexpr std::string_view kPrefix = "/api/v1/";

  static nlohmann::json parse_body(std::string_view body) {
    try {
      return nlohmann::json::parse(body.empty() ? std::string_view("{}") : body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::InvalidRequest, std::string("body is not valid JSON: ") + e.what());
    }
  }

  HttpResult route(std::string_view method, std::string_view path, std::string_view body) {
    if (path.substr(0, kPrefix.size()) != kPrefix) {
      return error_result(ErrorCode::NotFound, "no route for " + std::string(path));
    }
    const auto rest = path.substr(kPrefix.size());
    const auto snap = snapshot();

    if (method == "GET") {
      if (rest == "categories") return categories(*snap);
      if (rest == "approaches") return approaches(*snap);
      if (rest.substr(0, 11) == "approaches/") return approach(*snap, rest.substr(11));
    } else if (method == "POST") {
      if (rest == "suggest") return suggestion(*snap, parse_body(body));
      if (rest == "forecast") return forecast(parse_body(body));
      if (rest == "compare") return compare(parse_body(body));
      if (rest == "admin/reload") {
        reload();
        const auto fresh = snapshot();
        return {200, {{"reloaded", true}, {"approaches", fresh->catalog.size()}}};
      }
    }
    return error_result(ErrorCode::NotFound,
                        "no route for " + std::string(method) + " " + std::string(path));
  }

  static HttpResult categories(const Snapshot& snap) {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < kCategoryRows; ++i) list.push_back(json_io::to_json(snap.matrix.labels.at(i)));
    return {200, {{"categories", list}}};
  }

  static HttpResult approaches(const Snapshot& snap) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& a : snap.catalog) list.push_back(json_io::to_json(a));
    return {200, {{"approaches", list}}};
  }

  static HttpResult approach(const Snapshot& snap, std::string_view id_text) {
    int id = 0;
    const auto* end = id_text.data() + id_text.size();
    const auto [ptr, ec] = std::from_chars(id_text.data(), end, id);
    if (ec != std::errc() || ptr != end) {
      throw Error(ErrorCode::InvalidRequest, "approach id must be an integer");
    }
    for (const auto& a : snap.catalog) {
      if (a.approach_id == id) return {200, json_io::to_json(a)};
    }
    throw Error(ErrorCode::NotFound, "no approach with id " + std::to_string(id));
  }

  static HttpResult suggestion(const Snapshot& snap, const nlohmann::json& req) {
    const auto& cat = json_io::detail::require(req, "category", "request");
    CategoryId category;
    if (cat.is_number_integer()) {
      const auto idx = cat.get<std::int64_t>();
      if (idx < 0) throw Error(ErrorCode::RowOutOfRange, "category index must be 0..7");
      category = snap.matrix.labels.at(static_cast<std::size_t>(idx));
    } else if (cat.is_string()) {
      category = snap.matrix.labels.find(cat.get<std::string>());
    } else {
      throw Error(ErrorCode::InvalidRequest, "category must be an index or a label");
    }

    const auto ids = suggest(snap.matrix.matrix, category);
    nlohmann::json cards = nlohmann::json::array();
    nlohmann::json warnings = nlohmann::json::array();
    for (int id : ids) {
      bool found = false;
      for (const auto& a : snap.catalog) {
        if (a.approach_id == id) {
          cards.push_back(json_io::to_json(a));
          found = true;
        }
      }
      if (!found) warnings.push_back("approach " + std::to_string(id) + " missing from catalog");
    }
    nlohmann::json out = {{"category", json_io::to_json(category)},
                          {"approach_ids", ids},
                          {"approaches", cards},
                          {"warnings", warnings}};
    if (ids.empty()) out["message"] = "no suggestions - select a category";
    return {200, out};
  }

  static HttpResult forecast(const nlohmann::json& req) {
    return {200, to_json(run_forecast(parse_forecast_request(req)))};
  }

  // {"series": ..., "lms"?: ..., "inject_outliers"?: {"fraction", "magnitude", "seed"}}
  static HttpResult compare(const nlohmann::json& req) {
    const auto clean = json_io::series_from_json(json_io::detail::require(req, "series", "request"));
    const auto cfg = json_io::lms_config_from_json(req.value("lms", nlohmann::json()));
    if (req.contains("inject_outliers")) {
      const auto& inj = req["inject_outliers"];
      using json_io::detail::number;
      using json_io::detail::require;
      const auto contaminated = inject_outliers(
          clean, number(require(inj, "fraction", "inject_outliers"), "inject_outliers.fraction"),
          number(require(inj, "magnitude", "inject_outliers"), "inject_outliers.magnitude"),
          json_io::detail::unsigned_int(require(inj, "seed", "inject_outliers"), "inject_outliers.seed"));
      auto report = compare_models(contaminated, cfg);
      add_reference_rae(report, clean);
      return {200, json_io::to_json(report)};
    }
    return {200, json_io::to_json(compare_models(clean, cfg))};
  }

  Options options_;
  std::mutex reload_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
};

}  // namespace staffcast

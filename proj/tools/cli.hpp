#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "staffcast/dataset.hpp"
#include "staffcast/evaluation.hpp"
#include "staffcast/forecast.hpp"
#include "staffcast/heuristics.hpp"
#include "staffcast/json_io.hpp"
#include "staffcast/lms.hpp"
#include "staffcast/ols.hpp"
#include "staffcast/selector.hpp"
#include "staffcast/service.hpp"

namespace staffcast::cli {

namespace detail {

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct LmsFlags {
  std::string mode = "exact";
  std::size_t subsets = 1000;
  std::uint64_t seed = 0;
  std::size_t max_exact_n = 500;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--mode", mode, "LMS candidate search")->check(CLI::IsMember({"exact", "random"}));
    cmd.add_option("--subsets", subsets, "random pair draws (random mode)")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", seed, "seed for random mode");
    cmd.add_option("--max-exact-n", max_exact_n, "largest n searched exhaustively")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  }

  LmsConfig config() const {
    LmsConfig c;
    c.mode = mode == "random" ? LmsMode::Random : LmsMode::Exact;
    c.subsets = subsets;
    c.seed = seed;
    c.max_exact_n = max_exact_n;
    return c;
  }
};

inline PairedSeries load_series(const std::string& path) {
  return parse_paired_series(read_text_file(path));
}

inline LinearModel fit_by_name(const std::string& method, const PairedSeries& s, const LmsFlags& lms) {
  return method == "lms" ? fit_lms(s, lms.config()) : fit_ols(s);
}

inline void print_model(std::ostream& out, const LinearModel& m) {
  out << "method: " << method_name(m.method) << "\n"
      << "n: " << m.n_train << "\n"
      << "intercept: " << fixed(m.intercept) << "\n"
      << "slope: " << fixed(m.slope) << "\n"
      << "objective: " << fixed(m.objective) << "\n"
      << "equation: y = " << fixed(m.intercept) << " + " << fixed(m.slope) << " * x\n";
}

inline void print_diagnostics(std::ostream& out, const ResidualDiagnostics& d) {
  out << "diagnostics:\n"
      << "  sse           " << fixed(d.sse) << "\n"
      << "  rmse          " << fixed(d.rmse) << "\n"
      << "  ssr           " << fixed(d.ssr) << "\n"
      << "  max_abs_dev   " << fixed(d.max_abs_dev) << "\n"
      << "  min_abs_dev   " << fixed(d.min_abs_dev) << "\n"
      << "  mean_abs_dev  " << fixed(d.mean_abs_dev) << "\n";
}

inline std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

inline double to_real(const std::string& s, const char* what) {
  const auto v = staffcast::detail::parse_real(staffcast::detail::trim(s));
  if (!v) throw Error(ErrorCode::InvalidRequest, std::string(what) + ": '" + s + "' is not a number");
  return *v;
}

}  // namespace detail

/// Runs the command line; returns the process exit status
/// (0 success, 2 input/validation error, 1 internal error).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"staffcast - workforce demand forecasting and approach selection"};
  app.require_subcommand(1);

  std::string data_path;
  std::string method = "ols";
  detail::LmsFlags lms;
  bool as_json = false;

  auto* fit = app.add_subcommand("fit", "fit a regression line and print diagnostics");
  fit->add_option("--data", data_path, "CSV file with a header row and two columns")->required();
  fit->add_option("--method", method, "ols or lms")->check(CLI::IsMember({"ols", "lms"}));
  fit->add_flag("--json", as_json, "print the JSON forecast response instead of text");
  lms.add_to(*fit);

  double query_x = 0.0;
  auto* predict_cmd = app.add_subcommand("predict", "forecast y at a given x");
  predict_cmd->add_option("--data", data_path, "CSV file")->required();
  predict_cmd->add_option("--method", method, "ols or lms")->check(CLI::IsMember({"ols", "lms"}));
  predict_cmd->add_option("--x", query_x, "driver value to forecast at")->required();
  lms.add_to(*predict_cmd);

  std::string json_path;
  std::string inject;
  auto* compare = app.add_subcommand("compare", "OLS vs LMS comparison table");
  compare->add_option("--data", data_path, "CSV file")->required();
  compare->add_option("--json", json_path, "also write the report as JSON to this path");
  compare->add_option("--inject-outliers", inject, "fraction,magnitude,seed");
  lms.add_to(*compare);

  std::string category;
  std::string catalog_path;
  std::string matrix_path;
  auto* suggest_cmd = app.add_subcommand("suggest", "list approaches suited to a category");
  suggest_cmd->add_option("--category", category, "row index 0..7 or category label")->required();
  suggest_cmd->add_option("--catalog", catalog_path, "catalog JSON (default: built-in or $STAFFCAST_CATALOG)");
  suggest_cmd->add_option("--matrix", matrix_path, "decision matrix JSON");

  auto* validate_cmd = app.add_subcommand("validate", "report on a CSV series");
  validate_cmd->add_option("--data", data_path, "CSV file")->required();

  double total = 0.0, average = 0.0, current = 0.0, pct = 0.0;
  auto* direct = app.add_subcommand("direct", "direct managerial input");
  auto* total_opt = direct->add_option("--total", total, "total figure");
  direct->add_option("--average", average, "average figure per worker");
  auto* current_opt = direct->add_option("--current", current, "current headcount");
  direct->add_option("--reduction-pct", pct, "percentage reduction 0..100");

  std::string drivers, headcounts;
  double projected = 0.0;
  auto* ratio = app.add_subcommand("ratio", "historical ratio forecast");
  ratio->add_option("--drivers", drivers, "comma-separated driver history")->required();
  ratio->add_option("--headcounts", headcounts, "comma-separated headcount history")->required();
  ratio->add_option("--projected", projected, "projected driver value")->required();

  std::string scenario_path;
  auto* scenario = app.add_subcommand("scenario", "scenario analysis from a JSON scenario file");
  scenario->add_option("--file", scenario_path, "scenario JSON")->required();

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "run the HTTP/JSON service");
  serve->add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "bind address");
  serve->add_option("--catalog", catalog_path, "catalog JSON (default: built-in or $STAFFCAST_CATALOG)");
  serve->add_option("--matrix", matrix_path, "decision matrix JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: INVALID_ARGUMENT: " << e.what() << "\n";
    return 2;
  }

  auto service_options = [&] {
    Service::Options opts;
    if (!catalog_path.empty()) opts.catalog_path = catalog_path;
    if (!matrix_path.empty()) opts.matrix_path = matrix_path;
    return Service::options_from_env(opts);
  };

  try {
    if (*fit) {
      const auto series = detail::load_series(data_path);
      if (as_json) {
        nlohmann::json req = {{"method", method == "lms" ? "LMS_REGRESSION" : "LINEAR_REGRESSION"},
                              {"series", json_io::to_json(series)},
                              {"lms", json_io::to_json(lms.config())}};
        out << to_json(run_forecast(parse_forecast_request(req))).dump(2) << "\n";
        return 0;
      }
      const auto model = detail::fit_by_name(method, series, lms);
      detail::print_model(out, model);
      detail::print_diagnostics(out, diagnostics(model, series));
    } else if (*predict_cmd) {
      const auto series = detail::load_series(data_path);
      const auto model = detail::fit_by_name(method, series, lms);
      const double raw = predict(model, query_x);
      out << "method: " << method_name(model.method) << "\n"
          << "equation: y = " << detail::fixed(model.intercept) << " + " << detail::fixed(model.slope)
          << " * x\n"
          << "x: " << detail::fixed(query_x) << "\n"
          << "predicted: " << detail::fixed(raw) << "\n"
          << "rounded_headcount: " << detail::fixed(rounded_headcount(raw), 0) << " (ceiling)\n";
    } else if (*compare) {
      const auto clean = detail::load_series(data_path);
      ComparisonReport report;
      if (!inject.empty()) {
        const auto parts = detail::split_csv_list(inject);
        if (parts.size() != 3) {
          throw Error(ErrorCode::InvalidRequest, "--inject-outliers expects fraction,magnitude,seed");
        }
        const double fraction = detail::to_real(parts[0], "fraction");
        const double magnitude = detail::to_real(parts[1], "magnitude");
        const double seed = detail::to_real(parts[2], "seed");
        if (seed < 0 || seed != static_cast<double>(static_cast<std::uint64_t>(seed))) {
          throw Error(ErrorCode::InvalidRequest, "seed must be a non-negative integer");
        }
        const auto contaminated =
            inject_outliers(clean, fraction, magnitude, static_cast<std::uint64_t>(seed));
        report = compare_models(contaminated, lms.config());
        add_reference_rae(report, clean);
      } else {
        report = compare_models(clean, lms.config());
      }
      out << render_comparison_table(report);
      if (!json_path.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        if (!f) throw Error(ErrorCode::IoError, "cannot write '" + json_path + "'");
        f << json_io::to_json(report).dump(2) << "\n";
      }
    } else if (*suggest_cmd) {
      const Service svc(service_options());
      const auto snap = svc.snapshot();
      CategoryId cat;
      const auto idx = staffcast::detail::parse_real(category);
      if (idx && *idx >= 0 && *idx == static_cast<double>(static_cast<std::size_t>(*idx))) {
        cat = snap->matrix.labels.at(static_cast<std::size_t>(*idx));
      } else if (idx) {
        throw Error(ErrorCode::UnknownCategory, "category index must be 0..7");
      } else {
        cat = snap->matrix.labels.find(category);
      }
      out << "category: " << cat.index << " (" << cat.label << ")\n";
      const auto ids = suggest(snap->matrix.matrix, cat);
      if (ids.empty()) out << "no suggestions - select a category\n";
      for (int id : ids) {
        std::string name = "(not in catalog)";
        for (const auto& a : snap->catalog) {
          if (a.approach_id == id) name = a.name;
        }
        out << "  " << id << "  " << name << "\n";
      }
    } else if (*validate_cmd) {
      const auto series = detail::load_series(data_path);
      const auto r = validate(series);
      out << "n: " << r.n << "\n"
          << "x_variance_zero: " << (r.x_variance_zero ? "true" : "false") << "\n"
          << "duplicate_x_count: " << r.duplicate_x_count << "\n"
          << "issues:";
      for (auto code : r.issues) out << " " << issue_name(code);
      out << "\n";
    } else if (*direct) {
      double value = 0.0;
      if (*total_opt) {
        value = direct_managerial_forecast(total, average);
      } else if (*current_opt) {
        value = percentage_reduction(current, pct);
      } else {
        throw Error(ErrorCode::InvalidRequest, "give --total/--average or --current/--reduction-pct");
      }
      out << "forecast: " << detail::fixed(value) << "\n"
          << "rounded_headcount: " << detail::fixed(rounded_headcount(value), 0) << " (ceiling)\n";
    } else if (*ratio) {
      const auto d = detail::split_csv_list(drivers);
      const auto h = detail::split_csv_list(headcounts);
      if (d.size() != h.size()) throw Error(ErrorCode::LengthMismatch, "drivers and headcounts differ in length");
      RatioHistory history;
      for (std::size_t i = 0; i < d.size(); ++i) {
        history.records.push_back({detail::to_real(d[i], "driver"), detail::to_real(h[i], "headcount"),
                                   "period " + std::to_string(i + 1)});
      }
      const double value = historical_ratio_forecast(history, projected);
      out << "forecast: " << detail::fixed(value) << "\n"
          << "rounded_headcount: " << detail::fixed(rounded_headcount(value), 0) << " (ceiling)\n";
    } else if (*scenario) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_text_file(scenario_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidRequest, std::string("scenario file is not valid JSON: ") + e.what());
      }
      const auto rec = json_io::scenario_from_json(doc);
      for (const auto& f : apply_scenario(rec)) {
        out << f.name << " (x" << detail::fixed(f.multiplier, 4) << "):";
        for (std::size_t k = 0; k < f.forecast.size(); ++k) {
          out << " [" << detail::fixed(f.periods[k], 0) << "] " << detail::fixed(f.forecast[k]);
        }
        out << "\n";
      }
    } else if (*serve) {
      Service svc(service_options());
      httplib::Server server;
      svc.mount(server);
      err << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        throw Error(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: INTERNAL: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace staffcast::cli

#include "core/report.hpp"

#include <stdexcept>

#include <json.hpp>

namespace hypercon {

namespace {

using Json = nlohmann::ordered_json;

RunStatus run_status_from_string(const std::string& s) {
  if (s == "converged") return RunStatus::converged;
  if (s == "iter_cap") return RunStatus::iter_cap;
  if (s == "stalled") return RunStatus::stalled;
  throw std::invalid_argument("unknown run status '" + s + "'");
}

Json config_json(const FTRConfig& c, Strategy strategy) {
  Json j;
  j["strategy"] = to_string(strategy);
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  j["eps"] = c.eps;
  j["delta0"] = c.delta0;
  j["delta_max"] = c.delta_max;
  j["sigma"] = {c.sigma0, c.sigma1, c.sigma2};
  j["max_outer_iter"] = c.max_outer_iter;
  j["qp_tol"] = c.qp_tol;
  j["qp_max_iter"] = c.qp_max_iter;
  j["stop_norm"] = to_string(c.stop_norm);
  j["lambda_rule"] = to_string(c.lambda_rule);
  return j;
}

}  // namespace

std::string report_to_json(const RunReport& r, int indent) {
  const ConnectivityResult& res = r.result;
  Json j;
  j["version"] = r.version;
  j["input"] = {{"source", r.input}, {"n", r.n}, {"k", r.k}, {"m", r.m}};
  j["config"] = config_json(r.config, r.strategy);
  j["connected"] = res.connected;
  j["alpha"] = res.alpha;
  j["argmin_vertex"] = res.argmin >= 0 ? Json(res.argmin + 1) : Json(nullptr);

  Json minimizer = Json::array();
  Json per_vertex = Json::array();
  for (std::size_t c = 0; c < res.per_vertex.size(); ++c) {
    const VertexResult& v = res.per_vertex[c];
    const RestartStats& st = res.restart_stats[c];
    Json e;
    e["j"] = v.vertex + 1;
    e["alpha_j"] = v.alpha_j;
    e["ratio"] = st.hit_ratio;
    e["iters_mean"] = st.mean_iterations;
    e["time_s"] = st.mean_seconds;
    e["kkt_residual"] = v.kkt_residual;
    e["face_min_eig"] = v.face_min_eig;
    e["second_order_checked"] = v.second_order_checked;
    e["status"] = to_string(v.status);
    e["iterations"] = v.iterations;
    e["converged_runs"] = st.converged_runs;
    e["runs"] = st.runs;
    per_vertex.push_back(std::move(e));
    if (v.vertex == res.argmin) {
      for (Eigen::Index i = 0; i < v.x.size(); ++i) minimizer.push_back(v.x[i]);
    }
  }
  j["per_vertex"] = std::move(per_vertex);
  j["minimizer"] = std::move(minimizer);
  j["timing"] = {{"parse_s", r.parse_seconds}, {"solve_s", r.solve_seconds}};
  return j.dump(indent);
}

RunReport report_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  RunReport r;
  r.version = j.at("version").get<std::string>();
  const Json& in = j.at("input");
  r.input = in.at("source").get<std::string>();
  r.n = in.at("n").get<int>();
  r.k = in.at("k").get<int>();
  r.m = in.at("m").get<int>();

  const Json& c = j.at("config");
  r.strategy = strategy_from_string(c.at("strategy").get<std::string>());
  r.config.restarts = c.at("restarts").get<int>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.eps = c.at("eps").get<double>();
  r.config.delta0 = c.at("delta0").get<double>();
  r.config.delta_max = c.at("delta_max").get<double>();
  const Json& sigma = c.at("sigma");
  r.config.sigma0 = sigma.at(0).get<double>();
  r.config.sigma1 = sigma.at(1).get<double>();
  r.config.sigma2 = sigma.at(2).get<double>();
  r.config.max_outer_iter = c.at("max_outer_iter").get<int>();
  r.config.qp_tol = c.at("qp_tol").get<double>();
  r.config.qp_max_iter = c.at("qp_max_iter").get<int>();
  r.config.stop_norm = stop_norm_from_string(c.at("stop_norm").get<std::string>());
  r.config.lambda_rule = lambda_rule_from_string(c.at("lambda_rule").get<std::string>());

  ConnectivityResult& res = r.result;
  res.strategy = r.strategy;
  res.connected = j.at("connected").get<bool>();
  res.alpha = j.at("alpha").get<double>();
  res.argmin = j.at("argmin_vertex").is_null() ? -1 : j.at("argmin_vertex").get<int>() - 1;
  for (const Json& e : j.at("per_vertex")) {
    VertexResult v;
    RestartStats st;
    v.vertex = st.vertex = e.at("j").get<int>() - 1;
    v.alpha_j = e.at("alpha_j").get<double>();
    st.hit_ratio = e.at("ratio").get<double>();
    st.mean_iterations = e.at("iters_mean").get<double>();
    st.mean_seconds = e.at("time_s").get<double>();
    v.kkt_residual = e.at("kkt_residual").get<double>();
    v.face_min_eig = e.at("face_min_eig").get<double>();
    v.second_order_checked = e.at("second_order_checked").get<bool>();
    v.status = run_status_from_string(e.at("status").get<std::string>());
    v.iterations = e.at("iterations").get<int>();
    st.converged_runs = e.at("converged_runs").get<int>();
    st.runs = e.at("runs").get<int>();
    st.best = v.alpha_j;
    if (v.vertex == res.argmin) {
      const Json& xs = j.at("minimizer");
      v.x.resize(static_cast<Eigen::Index>(xs.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) v.x[static_cast<Eigen::Index>(i)] = xs[i].get<double>();
    }
    res.per_vertex.push_back(std::move(v));
    res.restart_stats.push_back(st);
  }
  const Json& timing = j.at("timing");
  r.parse_seconds = timing.at("parse_s").get<double>();
  r.solve_seconds = timing.at("solve_s").get<double>();
  return r;
}

}  // namespace hypercon

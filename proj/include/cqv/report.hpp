#pragma once

#include "cqv/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace cqv {

using Json = nlohmann::ordered_json;

inline Json to_json(const ModelConfig& cfg) {
  return Json{{"n", cfg.n}, {"w", cfg.w}, {"colors", cfg.colors}};
}

inline Json to_json(const Failure& f) {
  Json j;
  j["family"] = f.family;
  if (!f.lambda.empty()) j["lambda"] = f.lambda;
  if (f.k >= 0) j["k"] = f.k;
  if (f.l >= 0) j["l"] = f.l;
  if (!f.modes.empty()) j["modes"] = f.modes;
  if (f.point >= 0) j["point"] = f.point;
  j["detail"] = f.detail;
  return j;
}

inline Json to_json(const SuiteReport& r, bool timing) {
  Json j;
  j["name"] = r.name;
  if (r.global)
    j["config"] = "global";
  else
    j["config"] = to_json(r.cfg);
  j["backend"] = r.backend;
  j["seed"] = r.seed;
  j["points"] = r.points;
  j["instances"] = r.instances;
  j["resamples"] = r.resamples;
  Json signs = Json::object();
  for (const auto& [fam, s] : r.signs) {
    Json e;
    e["sigma"] = s.sigma;
    e["consistent"] = s.consistent;
    if (!s.note.empty()) e["note"] = s.note;
    signs[fam] = e;
  }
  j["sign"] = signs;
  Json fails = Json::array();
  for (const Failure& f : r.failures) fails.push_back(to_json(f));
  j["failures"] = fails;
  j["pass"] = r.pass();
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline Json report_json(const RunConfig& rc, const std::vector<SuiteReport>& reports,
                        bool timing) {
  Json j;
  Json cfgs = Json::array();
  for (const auto& c : rc.configs) cfgs.push_back(to_json(c));
  j["config"] = cfgs;
  j["trunc"] = rc.params.trunc;
  j["modes"] = rc.params.modes;
  j["series_order"] = rc.params.order();
  j["backend"] = rc.prime_backend ? Fp::backend_name() : Rat::backend_name();
  j["seed"] = rc.params.seed;
  j["points"] = rc.params.points;
  Json suites = Json::array();
  for (const auto& r : reports) suites.push_back(to_json(r, timing));
  j["suites"] = suites;
  j["pass"] = all_pass(reports);
  return j;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << body;
}

/// Operator dump: basis list plus sparse entries (source, target, value).
template <FieldType F>
Json dump_operator(FockEngine<F>& eng, OpKind kind, int k, int mode, bool twisted) {
  const SparseOp<F>& m = eng.op(kind, k, mode, twisted);
  Json j;
  j["kind"] = op_kind_name(kind);
  j["k"] = k;
  j["s"] = mode;
  j["twisted"] = twisted;
  j["config"] = to_json(eng.config());
  j["backend"] = eng.point().backend();
  j["seed"] = eng.point().seed;
  Json basis = Json::array();
  for (const auto& mp : eng.basis().elems) basis.push_back(mp.str());
  j["basis"] = basis;
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [t, v] : m.rows[i]) entries.push_back(Json::array({i, t, v.str()}));
  j["entries"] = entries;
  return j;
}

/// Fixed-point/tangent table as CSV: lambda, v-vector, dim T, per-k
/// addable/removable counts.
inline std::string enumerate_csv(const ModelConfig& cfg, int N) {
  std::ostringstream os;
  os << "lambda,boxes";
  for (int k = 0; k < cfg.n; ++k) os << ",v" << k;
  os << ",dimT";
  for (int k = 0; k < cfg.n; ++k) os << ",addable" << k;
  for (int k = 0; k < cfg.n; ++k) os << ",removable" << k;
  os << "\n";
  for (const Multipartition& mp : enumerate_multipartitions(cfg.w, N)) {
    os << "\"" << mp.str() << "\"," << mp.total();
    for (int v : residue_counts(cfg, mp)) os << "," << v;
    os << "," << tangent_char(cfg, mp).dim_long();
    for (int k = 0; k < cfg.n; ++k) os << "," << addable_boxes(cfg, mp, k).size();
    for (int k = 0; k < cfg.n; ++k) os << "," << removable_boxes(cfg, mp, k).size();
    os << "\n";
  }
  return os.str();
}

}  // namespace cqv

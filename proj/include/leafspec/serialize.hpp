#pragma once

// JSON views of the library's results. Keys are emitted in a fixed order.

#include <json.hpp>

#include "leafspec/conjecture.hpp"
#include "leafspec/constructions.hpp"
#include "leafspec/enumeration.hpp"
#include "leafspec/sequences.hpp"
#include "leafspec/spectrum.hpp"
#include "leafspec/witness.hpp"

namespace leafspec {

using Json = nlohmann::ordered_json;

inline Json to_json(const LengthSet& s) { return Json(s.values()); }

inline Json to_json(const SpectrumReport& r) {
  Json j;
  j["n"] = r.n;
  j["leaf_count"] = r.leaf_count;
  j["max_degree"] = r.max_degree;
  j["diameter"] = r.diameter;
  j["spectrum"] = to_json(r.spectrum);
  j["spectrum_size"] = r.spectrum.size();
  return j;
}

inline Json certificate_json(const WitnessCertificate& c, const std::string& bound_form, bool bound_holds) {
  Json j;
  j["witness"] = c.witness;
  Json entries = Json::array();
  for (const auto& e : c.entries) entries.push_back({e.partner, e.length});
  j["entries"] = std::move(entries);
  j["bound_form"] = bound_form;
  j["bound_holds"] = bound_holds;
  return j;
}

inline Json certificate_json(const PathCertificate& c, const std::string& bound_form, bool bound_holds) {
  Json j;
  j["pairs"] = c.size();
  Json entries = Json::array();
  for (const auto& e : c.entries) entries.push_back({e.u, e.v, e.length});
  j["entries"] = std::move(entries);
  j["bound_form"] = bound_form;
  j["bound_holds"] = bound_holds;
  return j;
}

inline Json to_json(const EqualDepthResult& r) {
  auto j = certificate_json(r.certificate, r.bound_form, r.bound_holds);
  j["depth"] = r.depth;
  j["marked"] = r.marked_count;
  j["delta"] = r.delta;
  j["size"] = r.certificate.size();
  return j;
}

inline Json to_json(const SpectrumCertificateResult& r) {
  auto j = certificate_json(r.certificate, r.bound_form, r.bound_holds);
  j["delta"] = r.delta;
  j["leaf_count"] = r.leaf_count;
  j["size"] = r.certificate.size();
  Json steps = Json::array();
  for (auto s : r.steps) steps.push_back(to_string(s));
  j["steps"] = std::move(steps);
  return j;
}

inline Json to_json(const MonotoneSubsequence& m) {
  Json j;
  j["direction"] = to_string(m.direction);
  j["length"] = m.indices.size();
  j["indices"] = m.indices;
  return j;
}

inline Json to_json(const ShiftSetResult& r) {
  Json j;
  j["side"] = to_string(r.side);
  j["indices"] = r.indices;
  j["values"] = r.values;
  j["size"] = r.values.size();
  j["guarantee"] = r.guarantee;
  j["smooth_bound"] = r.smooth_bound;
  j["blocked"] = r.blocked;
  return j;
}

inline Json to_json(const ShortPathResult& r) {
  auto j = certificate_json(r.certificate, r.bound_form, r.bound_holds);
  j["branch"] = to_string(r.branch);
  j["N"] = r.N;
  j["size"] = r.certificate.size();
  j["bound_asserted"] = r.bound_asserted;
  j["cap"] = r.cap;
  if (r.branch == Branch::deep) {
    j["pivot"] = r.pivot;
    j["group_depth"] = r.group_depth;
    j["group_size"] = r.group_size;
  } else {
    j["offsets"] = r.offsets;
    j["shift_set"] = to_json(*r.shift);
  }
  return j;
}

inline Json to_json(const SparseWitnessParams& p) {
  Json j;
  j["N"] = p.N;
  j["n"] = p.n;
  j["m"] = p.m;
  j["a"] = p.base;
  j["a_formula"] = "ceil(i/m)*m - (i mod m)";
  j["t"] = p.t;
  j["L"] = p.L;
  if (p.S) {
    j["S"] = *p.S;
  } else {
    j["S"] = std::to_string(p.s_before_last) + " + 2^" + std::to_string(p.last_exponent);
  }
  j["S_before_last"] = p.s_before_last;
  j["last_layers"] = p.last_layers;
  j["prefix"] = p.prefix;
  return j;
}

inline Json to_json(const PairLengthMinimum& r) {
  Json j;
  j["value"] = r.value;
  j["argmin"] = r.argmin;
  j["evaluated"] = r.evaluated;
  return j;
}

inline Json to_json(const ShortSpectrumReport& r) {
  Json j;
  j["N"] = r.N;
  j["count"] = r.count;
  j["ratio"] = r.ratio;
  j["diameter"] = r.diameter;
  j["lengths"] = to_json(r.in_range);
  j["max_witnessed_in_range"] = r.max_witnessed;
  j["max_witness_leaf"] = r.max_witness_leaf;
  if (r.witness) {
    j["short_path_witness"] = to_json(*r.witness);
  } else {
    j["short_path_witness"] = nullptr;
    j["skipped"] = r.witness_skipped;
  }
  return j;
}

inline Json to_json(const AuditRow& row) {
  Json j;
  j["n"] = row.n;
  j["class_count"] = row.class_count;
  j["leaf_count"] = row.leaf_count;
  j["min_spectrum_size"] = row.min_spectrum;
  j["max_spectrum_size"] = row.max_spectrum;
  j["bound"] = row.bound;
  j["violations"] = row.violations;
  j["certificate_failures"] = row.certificate_failures;
  j["min_certificate_size"] = row.min_certificate;
  Json tight = Json::array();
  for (const auto& c : row.tight) tight.push_back(c.code);
  j["tight"] = std::move(tight);
  return j;
}

inline Json to_json(const AuditReport& r) {
  Json j;
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  j["rows"] = std::move(rows);
  j["total_classes"] = r.total_classes;
  j["total_violations"] = r.total_violations;
  j["total_certificate_failures"] = r.total_certificate_failures;
  return j;
}

}  // namespace leafspec

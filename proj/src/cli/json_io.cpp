#include "hlawka/json_io.hpp"

namespace hlawka {

using nlohmann::ordered_json;

namespace {

ordered_json pairs_json(const std::vector<std::pair<std::string, double>>& pairs) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : pairs) out[k] = v;
  return out;
}

}  // namespace

ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json to_json(const EvalResult& r) {
  return {{"value", complex_json(r.value)},
          {"error_estimate", r.error_estimate},
          {"truncation", pairs_json(r.truncation)},
          {"warnings", r.warnings}};
}

ordered_json to_json(const CheckReport& r) {
  ordered_json samples = ordered_json::array();
  for (const auto& x : r.samples) {
    ordered_json row = {{"s", complex_json(x.s)},
                        {"lhs", complex_json(x.lhs)},
                        {"rhs", complex_json(x.rhs)},
                        {"abs_residual", x.abs_residual},
                        {"rel_residual", x.rel_residual}};
    if (x.allowed >= 0.0) row["allowed"] = x.allowed;
    samples.push_back(std::move(row));
  }
  return {{"identity", r.identity},
          {"gated", r.gated},
          {"pass", r.pass},
          {"tolerance", r.tolerance},
          {"max_rel_residual", r.max_rel_residual()},
          {"samples", std::move(samples)},
          {"truncation", pairs_json(r.truncation)},
          {"statistics", pairs_json(r.statistics)},
          {"notes", r.notes}};
}

ordered_json to_json(const Spectrum& s) {
  ordered_json entries = ordered_json::array();
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const auto& e = s.entries[k];
    ordered_json w = ordered_json::array();
    for (const auto& p : e.witnesses) w.push_back({p.m, p.n});
    entries.push_back({{"k", k + 1}, {"t", e.t}, {"a", e.a}, {"witnesses", std::move(w)}});
  }
  return {{"t_max", s.t_max}, {"tolerance", s.tolerance}, {"entries", std::move(entries)}, {"warnings", s.warnings}};
}

ordered_json to_json(const FourierTable& t) {
  ordered_json coeffs = ordered_json::array();
  for (int q = -t.q_max; q <= t.q_max; ++q) {
    const Complex c = t.at(q);
    coeffs.push_back({{"q", q}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"s", complex_json(t.s)},
          {"q_max", t.q_max},
          {"n", t.n},
          {"error_estimate", t.error_estimate},
          {"abs_sum", t.abs_sum()},
          {"coefficients", std::move(coeffs)},
          {"warnings", t.warnings}};
}

ordered_json to_json(const PerronResult& p) {
  ordered_json study = ordered_json::array();
  for (const auto& row : p.study) study.push_back({{"T", row.T}, {"residual", row.residual}, {"envelope", row.envelope}});
  return {{"x", p.x},
          {"sigma", p.sigma},
          {"T", p.T},
          {"approx", p.approx},
          {"direct_count", p.target},
          {"study", std::move(study)},
          {"warnings", p.warnings}};
}

}  // namespace hlawka

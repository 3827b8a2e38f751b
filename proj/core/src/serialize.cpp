#include "mop/serialize.hpp"

#include <nlohmann/json.hpp>

namespace mop {

using nlohmann::json;

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const MatrixPolynomial& p) {
  json coeffs = json::array();
  for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(to_json(p.coeff(k)));
  return {{"p", p.p()}, {"degree", p.degree()}, {"coeffs", std::move(coeffs)}};
}

json to_json(const BlockMatrix& m) {
  return {{"p", m.p()},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"data", to_json(m.data())}};
}

json to_json(const SpectralData& s) {
  json evs = json::array();
  for (const auto& ev : s.eigenvalues) {
    json chains = json::array();
    for (const auto& chain : ev.chains) {
      json vecs = json::array();
      for (const auto& v : chain.vectors) {
        json entries = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i)
          entries.push_back({{"re", v(i).real()}, {"im", v(i).imag()}});
        vecs.push_back(std::move(entries));
      }
      chains.push_back(std::move(vecs));
    }
    evs.push_back({{"value", {{"re", ev.value.real()}, {"im", ev.value.imag()}}},
                   {"alpha", ev.alpha},
                   {"s", ev.geometric},
                   {"kappas", ev.kappas()},
                   {"chains", std::move(chains)}});
  }
  return {{"p", s.p}, {"degree", s.degree}, {"eigenvalues", std::move(evs)}};
}

json to_json(const BiorthogonalSystem& s) {
  json p1 = json::array(), p2 = json::array(), h = json::array();
  for (int n = 0; n <= s.n_max; ++n) {
    p1.push_back(to_json(s.p1[n]));
    p2.push_back(to_json(s.p2[n]));
    h.push_back(to_json(s.h[n]));
  }
  return {{"p", s.p}, {"n_max", s.n_max}, {"P1", std::move(p1)},
          {"P2", std::move(p2)}, {"H", std::move(h)}};
}

json to_json(const ConnectionData& c) {
  json rows = json::array();
  for (int k = 0; k < c.rows(); ++k) {
    json o1 = json::array(), o2 = json::array();
    for (const auto& b : c.omega1[k]) o1.push_back(to_json(b));
    for (const auto& b : c.omega2[k]) o2.push_back(to_json(b));
    rows.push_back({{"k", k},
                    {"omega1", std::move(o1)},
                    {"omega2", std::move(o2)},
                    {"H_hat", to_json(c.h_hat[k])}});
  }
  return {{"N", c.n_deg},
          {"rows", std::move(rows)},
          {"band_residual", c.band_residual},
          {"diag_residual", c.diag_residual},
          {"relation_residual", c.relation_residual}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.size();
  if (rows == 0) return Eigen::MatrixXd();
  const auto cols = j.at(0).size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

MatrixPolynomial poly_from_json(const json& j) {
  std::vector<Eigen::MatrixXd> coeffs;
  const json& arr = j.contains("coeffs") ? j.at("coeffs") : j;
  for (const auto& c : arr) coeffs.push_back(matrix_from_json(c));
  return MatrixPolynomial(std::move(coeffs));
}

SpectralData spectral_from_json(const json& j) {
  SpectralData s;
  s.p = j.at("p").get<int>();
  s.degree = j.at("degree").get<int>();
  for (const auto& je : j.at("eigenvalues")) {
    Eigenvalue ev;
    ev.value = {je.at("value").at("re").get<double>(),
                je.at("value").at("im").get<double>()};
    ev.alpha = je.at("alpha").get<int>();
    ev.geometric = je.at("s").get<int>();
    for (const auto& jc : je.at("chains")) {
      JordanChain chain;
      for (const auto& jv : jc) {
        Eigen::VectorXcd v(jv.size());
        for (size_t i = 0; i < jv.size(); ++i)
          v(i) = {jv.at(i).at("re").get<double>(),
                  jv.at(i).at("im").get<double>()};
        chain.vectors.push_back(std::move(v));
      }
      ev.chains.push_back(std::move(chain));
    }
    s.eigenvalues.push_back(std::move(ev));
  }
  return s;
}

BiorthogonalSystem system_from_json(const json& j) {
  BiorthogonalSystem s;
  s.p = j.at("p").get<int>();
  s.n_max = j.at("n_max").get<int>();
  for (const auto& jp : j.at("P1")) s.p1.push_back(poly_from_json(jp));
  for (const auto& jp : j.at("P2")) s.p2.push_back(poly_from_json(jp));
  for (const auto& jh : j.at("H")) s.h.push_back(matrix_from_json(jh));
  return s;
}

MatrixMeasure measure_from_json(const json& j) {
  MatrixMeasure m;
  m.p = j.at("p").get<int>();
  m.base.family = family_from_name(j.at("base").get<std::string>());
  if (j.contains("params")) {
    const auto& params = j.at("params");
    if (params.contains("alpha")) m.base.alpha = params.at("alpha").get<double>();
    if (params.contains("beta")) m.base.beta = params.at("beta").get<double>();
  }
  if (j.contains("factor") && !j.at("factor").is_null())
    m.factor = poly_from_json(j.at("factor"));
  if (j.contains("quad_order")) m.quad_order = j.at("quad_order").get<int>();
  if (m.factor && m.factor->p() != m.p)
    throw Error("BlockShape", "factor block size disagrees with measure p");
  return m;
}

json to_json(const MatrixMeasure& m) {
  json j = {{"base", family_name(m.base.family)},
            {"params", {{"alpha", m.base.alpha}, {"beta", m.base.beta}}},
            {"p", m.p}};
  if (m.factor) {
    json coeffs = json::array();
    for (int k = 0; k <= m.factor->degree(); ++k)
      coeffs.push_back(to_json(m.factor->coeff(k)));
    j["factor"] = {{"coeffs", std::move(coeffs)}};
  }
  if (m.quad_order) j["quad_order"] = m.quad_order;
  return j;
}

TodaTimes toda_times_from_json(const json& j, int p) {
  TodaTimes t;
  t.p = p;
  auto parse_side = [&](const char* key) {
    std::vector<Eigen::VectorXd> out;
    if (!j.contains(key)) return out;
    for (const auto& jv : j.at(key)) {
      Eigen::VectorXd v(p);
      if (jv.is_number()) {
        v.setConstant(jv.get<double>());
      } else {
        for (int i = 0; i < p; ++i) v(i) = jv.at(i).get<double>();
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  t.t1 = parse_side("t1");
  t.t2 = parse_side("t2");
  return t;
}

json to_json(const TodaTimes& t) {
  auto dump_side = [](const std::vector<Eigen::VectorXd>& side) {
    json arr = json::array();
    for (const auto& v : side) {
      json jv = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) jv.push_back(v(i));
      arr.push_back(std::move(jv));
    }
    return arr;
  };
  return {{"t1", dump_side(t.t1)}, {"t2", dump_side(t.t2)}};
}

}  // namespace mop

#pragma once

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "detset/bounds.hpp"
#include "detset/gadgets.hpp"
#include "detset/matrix.hpp"

namespace detset {

using Json = nlohmann::json;

// Integers that fit in int64 serialize as JSON numbers, anything larger as a
// decimal string.
inline Json json_int(const Int& v) {
  if (v >= Int(std::numeric_limits<std::int64_t>::min()) &&
      v <= Int(std::numeric_limits<std::int64_t>::max()))
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  raise(Errc::usage, "expected an integer value");
}

template <class R>
Json set_to_json(const ElemSet<R>& a) {
  Json out = Json::array();
  a.for_each([&](const typename R::Elem& e) {
    out.push_back(json_int(a.ring().to_integer(e)));
  });
  return out;
}

template <class R>
Json matrix_to_json(const Matrix<R>& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json_int(m.ring().to_integer(m.at(i, j))));
    entries.push_back(std::move(row));
  }
  Json out;
  if constexpr (is_prime_field_v<R>)
    out["p"] = m.ring().modulus();
  else
    out["p"] = nullptr;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["entries"] = std::move(entries);
  return out;
}

template <class R>
Matrix<R> matrix_from_json(const R& ring, const Json& j) {
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const Json& entries = j.at("entries");
  if (entries.size() != rows)
    raise(Errc::shape_mismatch, "entry rows do not match the row count");
  Matrix<R> m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols)
      raise(Errc::shape_mismatch, "entry row has the wrong length");
    for (std::size_t jx = 0; jx < cols; ++jx)
      m.at(i, jx) = ring.from_integer(int_from_json(entries[i][jx]));
  }
  return m;
}

template <class R>
Json witness_to_json(const GadgetWitness<R>& w) {
  const R& ring = w.matrix().ring();
  Json asg = Json::array();
  const Assignment<R>& a = w.assignment();
  for (std::size_t i = 0; i < a.m; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.n; ++j)
      row.push_back(json_int(ring.to_integer(a.at(i, j))));
    asg.push_back(std::move(row));
  }
  Json out;
  out["size"] = w.size();
  out["value"] = json_int(ring.to_integer(w.value()));
  out["scale"] = json_int(ring.to_integer(w.scale()));
  out["matrix"] = matrix_to_json(w.matrix());
  out["assignment"] = std::move(asg);
  return out;
}

inline Json report_to_json(const BoundReport& r) {
  Json out;
  out["name"] = r.name;
  out["ring"] = r.ring;
  out["p"] = r.p ? Json(*r.p) : Json(nullptr);
  out["set"] = r.set_repr.empty() ? Json(nullptr) : Json(r.set_repr);
  out["set_size"] = r.set_size ? Json(*r.set_size) : Json(nullptr);
  out["n"] = r.n ? Json(*r.n) : Json(nullptr);
  out["m"] = r.m ? Json(*r.m) : Json(nullptr);
  out["delta"] = r.delta ? Json(*r.delta) : Json(nullptr);
  out["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  out["trials"] = r.trials ? Json(*r.trials) : Json(nullptr);
  out["lhs"] = json_int(r.lhs);
  out["rhs"] = r.rhs_value();
  if (r.rhs_is_exact) {
    std::ostringstream exact;
    exact << boost::multiprecision::numerator(r.rhs_rat) << "/"
          << boost::multiprecision::denominator(r.rhs_rat);
    out["rhs_exact"] = exact.str();
  } else {
    out["rhs_exact"] = nullptr;
  }
  out["pass"] = r.pass;
  out["status"] = r.status;
  out["details"] = r.details;
  return out;
}

inline std::string report_csv_header() {
  return "name,p,set_size,n,lhs,rhs,pass";
}

inline std::string report_to_csv(const BoundReport& r) {
  std::ostringstream out;
  out << r.name << ',';
  if (r.p) out << *r.p;
  out << ',';
  if (r.set_size) out << *r.set_size;
  out << ',';
  if (r.n) out << *r.n;
  out << ',' << r.lhs.str() << ',' << Json(r.rhs_value()).dump() << ','
      << (r.pass ? "true" : "false");
  return out.str();
}

}  // namespace detset

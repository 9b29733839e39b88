#include "genpf/io.hpp"

#include "genpf/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace genpf {

namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

Matrix<Rational> matrix_from_json(const Json& rows, const std::string& where) {
  if (!rows.is_array()) throw std::invalid_argument(where + " must be an array of rows");
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    if (!row.is_array()) throw std::invalid_argument(where + "[" + std::to_string(i) + "] must be an array");
    std::vector<Rational> values;
    for (std::size_t j = 0; j < row.size(); ++j) {
      values.push_back(rational_from_json(row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
    if (!out.empty() && values.size() != out.front().size()) {
      throw std::invalid_argument("dimension mismatch: " + where + " rows have different lengths");
    }
    out.push_back(std::move(values));
  }
  return Matrix<Rational>::from_rows(out);
}

Json matrix_to_json(const Matrix<Rational>& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(rational_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> point_from_json(const Json& p, const std::string& where) {
  if (!p.is_array() || p.empty()) throw std::invalid_argument(where + " must be a nonempty array of numbers");
  std::vector<double> out;
  for (const Json& c : p) {
    if (!c.is_number()) throw std::invalid_argument(where + " must contain numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

std::vector<std::string> names_from_json(const Json& a, const std::string& where) {
  if (!a.is_array()) throw std::invalid_argument(where + " must be an array of names");
  std::vector<std::string> out;
  for (const Json& s : a) {
    if (!s.is_string()) throw std::invalid_argument(where + " must contain strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

Rational rational_from_json(const Json& value, const std::string& where) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(mpz_class(std::to_string(value.get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(value.get<std::int64_t>())));
  }
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (!std::isfinite(d)) throw std::invalid_argument(where + " is not finite");
    return rational_from_double(d);
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  throw std::invalid_argument(where + " must be a number or a \"p/q\" string");
}

Json rational_to_json(const Rational& value) {
  if (is_integral(value) && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
  return Json(to_string(value));
}

GainSystem system_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("instance must be a JSON object");
  std::optional<GainSystem> system;
  if (doc.contains("gains")) {
    if (doc.contains("supporter_gains") || doc.contains("repressor_gains")) {
      throw std::invalid_argument("instance has both \"gains\" and split gain matrices");
    }
    system = GainSystem::from_signed(matrix_from_json(doc.at("gains"), "gains"));
  } else if (doc.contains("supporter_gains") || doc.contains("repressor_gains")) {
    Matrix<Rational> s = matrix_from_json(require(doc, "supporter_gains"), "supporter_gains");
    Matrix<Rational> r = matrix_from_json(require(doc, "repressor_gains"), "repressor_gains");
    if (s.rows() != r.rows() || s.cols() != r.cols()) {
      throw std::invalid_argument("dimension mismatch: supporter_gains and repressor_gains differ in shape");
    }
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j)
        if (sgn(s(i, j)) < 0 || sgn(r(i, j)) < 0) {
          throw std::invalid_argument("negative gain at (" + std::to_string(i) + ", " + std::to_string(j) +
                                      "); split gain matrices must be nonnegative");
        }
    system.emplace(std::move(s), std::move(r));
  } else {
    throw std::invalid_argument("missing field \"gains\"");
  }
  auto check_dim = [&](const char* key, std::size_t actual) {
    if (!doc.contains(key)) return;
    const Json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || static_cast<std::size_t>(v.get<std::int64_t>()) != actual) {
      throw std::invalid_argument(std::string("dimension mismatch: \"") + key + "\" is " + v.dump() + " but the gains have " +
                                  std::to_string(actual));
    }
  };
  check_dim("n", system->entities());
  check_dim("m", system->affectors());
  return std::move(*system);
}

Json system_to_json(const GainSystem& system) {
  Json doc;
  doc["n"] = system.entities();
  doc["m"] = system.affectors();
  doc["gains"] = matrix_to_json(system.signed_gains());
  return doc;
}

MisoScenario miso_from_json(const Json& doc) {
  MisoScenario sc;
  const Json& alpha = require(doc, "alpha");
  if (!alpha.is_number()) throw std::invalid_argument("alpha must be a number");
  sc.alpha = alpha.get<double>();
  const Json& receivers = require(doc, "receivers");
  if (!receivers.is_array()) throw std::invalid_argument("receivers must be an array");
  for (std::size_t i = 0; i < receivers.size(); ++i) {
    sc.receivers.push_back(point_from_json(receivers[i], "receivers[" + std::to_string(i) + "]"));
  }
  const Json& transmitters = require(doc, "transmitters");
  if (!transmitters.is_array()) throw std::invalid_argument("transmitters must be an array");
  for (std::size_t l = 0; l < transmitters.size(); ++l) {
    const std::string where = "transmitters[" + std::to_string(l) + "]";
    const Json& t = transmitters[l];
    MisoTransmitter tx;
    tx.position = point_from_json(require(t, "position"), where + ".position");
    const Json& owner = require(t, "receiver");
    if (!owner.is_number_integer() || owner.get<std::int64_t>() < 0) {
      throw std::invalid_argument(where + ".receiver must be a nonnegative integer");
    }
    tx.receiver = owner.get<std::size_t>();
    sc.transmitters.push_back(std::move(tx));
  }
  return sc;
}

Json miso_to_json(const MisoScenario& scenario) {
  Json doc;
  doc["alpha"] = scenario.alpha;
  doc["receivers"] = scenario.receivers;
  Json tx = Json::array();
  for (const MisoTransmitter& t : scenario.transmitters) tx.push_back({{"position", t.position}, {"receiver", t.receiver}});
  doc["transmitters"] = std::move(tx);
  return doc;
}

EconomyScenario economy_from_json(const Json& doc) {
  EconomyScenario sc;
  sc.industries = names_from_json(require(doc, "industries"), "industries");
  sc.commodities = names_from_json(require(doc, "commodities"), "commodities");
  sc.production = matrix_from_json(require(doc, "production"), "production");
  sc.requirements = matrix_from_json(require(doc, "requirements"), "requirements");
  return sc;
}

Json economy_to_json(const EconomyScenario& scenario) {
  Json doc;
  doc["industries"] = scenario.industries;
  doc["commodities"] = scenario.commodities;
  doc["production"] = matrix_to_json(scenario.production);
  doc["requirements"] = matrix_to_json(scenario.requirements);
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

}  // namespace genpf

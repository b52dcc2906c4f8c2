#include "shavok/io.hpp"

#include "shavok/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace shavok {

namespace fs = std::filesystem;

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const Json& data = j.at("data");
    require(rows >= 0 && cols >= 0 && static_cast<Index>(data.size()) == rows, ErrorKind::data,
            "matrix json: row count does not match dims");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const Json& row = data[static_cast<std::size_t>(i)];
      require(static_cast<Index>(row.size()) == cols, ErrorKind::data,
              "matrix json: row " + std::to_string(i) + " has wrong length");
      for (Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, std::string("matrix json: ") + e.what());
  }
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  try {
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, std::string("vector json: ") + e.what());
  }
}

Json complex_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({{"re", v(i).real()}, {"im", v(i).imag()}});
  return out;
}

ComplexVector complex_from_json(const Json& j) {
  try {
    ComplexVector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
      v(static_cast<Index>(i)) = {j[i].at("re").get<double>(), j[i].at("im").get<double>()};
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, std::string("eigenvalue json: ") + e.what());
  }
}

Json config_to_json(const FitConfig& c) {
  return Json{{"delays", c.delays},
              {"rank", c.rank},
              {"dt", c.dt},
              {"centering", c.centering},
              {"forcing", c.forcing},
              {"method", std::string(to_string(c.method))},
              {"derivative", std::string(to_string(c.derivative))},
              {"center_per_half", c.center_per_half},
              {"rank_tolerance", c.rank_tolerance}};
}

FitConfig config_from_json(const Json& j) {
  FitConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "delays") c.delays = value.get<Index>();
      else if (key == "rank") c.rank = value.get<Index>();
      else if (key == "dt") c.dt = value.get<double>();
      else if (key == "centering") c.centering = value.get<bool>();
      else if (key == "forcing") c.forcing = value.get<bool>();
      else if (key == "method") c.method = parse_method(value.get<std::string>());
      else if (key == "derivative") c.derivative = parse_derivative(value.get<std::string>());
      else if (key == "center_per_half") c.center_per_half = value.get<bool>();
      else if (key == "rank_tolerance") c.rank_tolerance = value.get<double>();
      else fail(ErrorKind::config, "fit config: unknown field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::config, std::string("fit config: ") + e.what());
  }
  return c;
}

Json model_to_json(const DelayModel& m) {
  Json j;
  j["config"] = config_to_json(m.config);
  j["a_discrete"] = matrix_to_json(m.a_discrete);
  j["a_continuous"] = matrix_to_json(m.a_continuous);
  j["b_discrete"] = m.b_discrete ? vector_to_json(*m.b_discrete) : Json(nullptr);
  j["b_continuous"] = m.b_continuous ? vector_to_json(*m.b_continuous) : Json(nullptr);
  j["sigma"] = vector_to_json(m.basis.sigma);
  j["u"] = matrix_to_json(m.basis.u);
  j["speed"] = m.speed ? Json(*m.speed) : Json(nullptr);
  j["residual"] = m.residual;
  j["t_first"] = m.t_first;
  return j;
}

DelayModel model_from_json(const Json& j) {
  DelayModel m;
  try {
    m.config = config_from_json(j.at("config"));
    m.a_discrete = matrix_from_json(j.at("a_discrete"));
    m.a_continuous = matrix_from_json(j.at("a_continuous"));
    if (!j.at("b_discrete").is_null()) m.b_discrete = vector_from_json(j.at("b_discrete"));
    if (!j.at("b_continuous").is_null()) m.b_continuous = vector_from_json(j.at("b_continuous"));
    m.basis.sigma = vector_from_json(j.at("sigma"));
    m.basis.u = matrix_from_json(j.at("u"));
    if (!j.at("speed").is_null()) m.speed = j.at("speed").get<double>();
    m.residual = j.at("residual").get<double>();
    m.t_first = j.at("t_first").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, std::string("model json: ") + e.what());
  }
  require(m.a_continuous.rows() == m.a_continuous.cols() &&
              m.a_discrete.rows() == m.a_continuous.rows() &&
              m.a_discrete.cols() == m.a_continuous.cols(),
          ErrorKind::data, "model json: dynamics matrices have inconsistent shapes");
  require(m.a_continuous.rows() > 0, ErrorKind::data, "model json: empty dynamics matrix");
  m.spectrum = eigen_nonsymmetric(m.a_continuous);
  return m;
}

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_number(std::string_view field, const fs::path& path, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorKind::data, path.string() + ":" + std::to_string(line) + ": cannot parse '" +
                              std::string(field) + "' as a number");
  }
  return v;
}

}  // namespace

TimeSeries read_csv(const fs::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> times, values;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      std::string compact;
      for (char ch : line) {
        if (ch != ' ' && ch != '\t') compact.push_back(ch);
      }
      require(compact == "time,value", ErrorKind::data,
              path.string() + ": expected header 'time,value', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    require(comma != std::string::npos && line.find(',', comma + 1) == std::string::npos,
            ErrorKind::data, path.string() + ":" + std::to_string(lineno) +
                                 ": expected two comma-separated columns");
    const std::string_view view(line);
    times.push_back(parse_number(view.substr(0, comma), path, lineno));
    values.push_back(parse_number(view.substr(comma + 1), path, lineno));
  }
  require(header, ErrorKind::data, path.string() + ": missing 'time,value' header");
  require(times.size() >= 2, ErrorKind::data, path.string() + ": need at least 2 samples");

  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  require(dt > 0.0, ErrorKind::data, path.string() + ": time column must increase");
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = times.front() + static_cast<double>(k) * dt;
    if (std::abs(times[k] - expected) > 1e-9 * dt) {
      fail(ErrorKind::data, path.string() + ": sample " + std::to_string(k) +
                                " breaks uniform spacing; resample the data with "
                                "--dt-resample before fitting");
    }
  }
  return TimeSeries(times.front(), dt, std::move(values));
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_csv(const fs::path& path, const TimeSeries& x) {
  std::string out = "time,value\n";
  for (std::size_t k = 0; k < x.size(); ++k) {
    out += format_double(x.time(k));
    out += ',';
    out += format_double(x[k]);
    out += '\n';
  }
  write_file_atomic(path, out);
}

Json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, path.string() + ": invalid JSON: " + e.what());
  }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::io, "cannot move output into '" + path.string() + "'");
  }
}

}  // namespace shavok

#include "dilation/io.hpp"

#include "dilation/error.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace dilation {

namespace {

const Json& field(const Json& j, const char* name, std::string_view context)
{
  if (!j.is_object()) throw ParseError(std::string(context) + ": expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string(context) + ": missing field '" + name + "'");
  return *it;
}

double number(const Json& j, const char* name, std::string_view context)
{
  const Json& v = field(j, name, context);
  if (!v.is_number()) throw ParseError(std::string(context) + ": field '" + name + "' must be a number");
  return v.get<double>();
}

std::string text(const Json& j, const char* name, std::string_view context)
{
  const Json& v = field(j, name, context);
  if (!v.is_string()) throw ParseError(std::string(context) + ": field '" + name + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const Json& j, const char* name, std::string_view context)
{
  const Json& v = field(j, name, context);
  if (!v.is_array()) throw ParseError(std::string(context) + ": field '" + name + "' must be an array");
  std::vector<double> out;
  for (const Json& e : v) {
    if (!e.is_number()) throw ParseError(std::string(context) + ": field '" + name + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Json vector_to_json(const Vector& v) { return Json(v.to_vector()); }

} // namespace

Json matrix_to_json(const Matrix& m)
{
  return Json{{"n", m.dim()}, {"rows", m.rows()}};
}

Matrix matrix_from_json(const Json& j)
{
  const Json& n_field = field(j, "n", "matrix");
  if (!n_field.is_number_integer()) throw ParseError("matrix: field 'n' must be an integer");
  const int n = n_field.get<int>();
  if (n < 1 || n > kMaxDim)
    throw ParseError("matrix: field 'n' = " + std::to_string(n) + " outside 1.." + std::to_string(kMaxDim));
  const Json& rows = field(j, "rows", "matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError("matrix: field 'rows' must be an array of n = " + std::to_string(n) + " rows");
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("matrix: field 'rows[" + std::to_string(i) + "]' must hold n = " + std::to_string(n) +
                       " numbers");
    std::vector<double> r;
    for (const Json& e : row) {
      if (!e.is_number()) throw ParseError("matrix: field 'rows[" + std::to_string(i) + "]' has a non-number");
      r.push_back(e.get<double>());
    }
    data.push_back(std::move(r));
  }
  return Matrix::from_rows(data);
}

Json verdict_to_json(const Verdict& v)
{
  Json j;
  j["status"] = std::string(to_string(v.status));
  j["criterion"] = v.criterion ? Json(std::string(to_string(*v.criterion))) : Json(nullptr);
  j["certificate"] = Json::object();
  for (const auto& [k, val] : v.certificate) j["certificate"][k] = val;
  j["paper_ref"] = v.reference;
  return j;
}

Verdict verdict_from_json(const Json& j)
{
  Verdict v;
  try {
    v.status = status_from_string(text(j, "status", "verdict"));
    const Json& c = field(j, "criterion", "verdict");
    if (!c.is_null()) {
      if (!c.is_string()) throw ParseError("verdict: field 'criterion' must be a string or null");
      v.criterion = criterion_from_string(c.get<std::string>());
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("verdict: ") + e.what());
  }
  const Json& cert = field(j, "certificate", "verdict");
  if (!cert.is_object()) throw ParseError("verdict: field 'certificate' must be an object");
  for (const auto& [k, val] : cert.items()) {
    if (!val.is_number()) throw ParseError("verdict: certificate entry '" + k + "' must be a number");
    v.certificate[k] = val.get<double>();
  }
  v.reference = text(j, "paper_ref", "verdict");
  return v;
}

Json profile_to_json(const Profile& p)
{
  Json j{{"name", p.name()}, {"scale", p.scale()}};
  if (p.name() == "tabulated") {
    j["t"] = p.nodes();
    j["values"] = p.node_values();
  } else if (p.name() != "raised-sine") {
    throw InvalidInput("profile '" + p.name() + "' is a custom function and cannot be serialized");
  }
  return j;
}

Profile profile_from_json(const Json& j)
{
  const std::string name = text(j, "name", "profile");
  const double scale = j.contains("scale") ? number(j, "scale", "profile") : 1.0;
  Profile p = [&] {
    if (name == "raised-sine") return Profile::raised_sine();
    if (name == "tabulated") return Profile::tabulated(numbers(j, "t", "profile"), numbers(j, "values", "profile"));
    throw ParseError("profile: field 'name' must be \"raised-sine\" or \"tabulated\", got \"" + name + "\"");
  }();
  return scale == 1.0 ? p : p.rescaled(scale);
}

Json wavelet_to_json(const WaveletSpec& w)
{
  if (w.is_profile())
    return Json{{"kind", "profile"},
                {"generator", matrix_to_json(w.profile().target.original)},
                {"profile", profile_to_json(w.profile().profile)}};
  if (w.is_indicator())
    return Json{{"kind", "indicator"},
                {"D", matrix_to_json(Matrix::diagonal(w.indicator().diagonal))},
                {"distinguished", w.indicator().distinguished}};
  return Json{{"kind", "transported"},
              {"S", matrix_to_json(w.transported().similarity)},
              {"base", wavelet_to_json(*w.transported().base)}};
}

WaveletSpec wavelet_from_json(const Json& j)
{
  const std::string kind = text(j, "kind", "wavelet");
  if (kind == "profile") {
    const Matrix g = matrix_from_json(field(j, "generator", "wavelet"));
    const Json* p = j.contains("profile") ? &j["profile"] : nullptr;
    return make_profile_wavelet(g, p ? profile_from_json(*p) : default_profile());
  }
  if (kind == "indicator") {
    const Matrix d = matrix_from_json(field(j, "D", "wavelet"));
    if (!d.is_diagonal(0.0)) throw ParseError("wavelet: field 'D' must be a diagonal matrix");
    return make_indicator_wavelet(d);
  }
  if (kind == "transported") {
    const Matrix s = matrix_from_json(field(j, "S", "wavelet"));
    return make_transported_wavelet(wavelet_from_json(field(j, "base", "wavelet")), s);
  }
  throw ParseError("wavelet: field 'kind' must be profile, indicator or transported, got \"" + kind + "\"");
}

Json delta_report_to_json(const DeltaReport& r)
{
  Json samples = Json::array();
  for (const DeltaSample& s : r.samples)
    samples.push_back(Json{{"xi", vector_to_json(s.xi)}, {"delta", s.delta}, {"quad_error", s.quad_error}});
  Json j{{"samples", samples},
         {"max_abs_deviation", r.max_abs_deviation},
         {"worst_index", r.worst_index},
         {"quadrature",
          {{"rule", r.quadrature.rule},
           {"max_panels", r.quadrature.max_panels},
           {"t_min", r.quadrature.t_min},
           {"t_max", r.quadrature.t_max}}},
         {"seed", r.seed},
         {"tol", r.tol}};
  if (r.worst_index >= 0) j["worst_sample"] = samples[static_cast<std::size_t>(r.worst_index)];
  return j;
}

DeltaReport delta_report_from_json(const Json& j)
{
  DeltaReport r;
  const Json& samples = field(j, "samples", "delta report");
  if (!samples.is_array()) throw ParseError("delta report: field 'samples' must be an array");
  for (const Json& s : samples) {
    DeltaSample d;
    d.xi = Vector(numbers(s, "xi", "delta sample"));
    d.delta = number(s, "delta", "delta sample");
    d.quad_error = number(s, "quad_error", "delta sample");
    r.samples.push_back(d);
  }
  r.max_abs_deviation = number(j, "max_abs_deviation", "delta report");
  r.worst_index = static_cast<int>(number(j, "worst_index", "delta report"));
  const Json& q = field(j, "quadrature", "delta report");
  r.quadrature.rule = text(q, "rule", "quadrature");
  r.quadrature.max_panels = static_cast<int>(number(q, "max_panels", "quadrature"));
  r.quadrature.t_min = number(q, "t_min", "quadrature");
  r.quadrature.t_max = number(q, "t_max", "quadrature");
  const Json& seed = field(j, "seed", "delta report");
  if (!seed.is_number_unsigned() && !seed.is_number_integer())
    throw ParseError("delta report: field 'seed' must be a non-negative integer");
  r.seed = seed.get<std::uint64_t>();
  r.tol = number(j, "tol", "delta report");
  return r;
}

Json growth_table_to_json(const GrowthTable& g)
{
  return Json{{"kind", std::string(to_string(g.kind))},
              {"radii", g.radii},
              {"masses", g.masses},
              {"fitted_exponent", g.fitted_exponent},
              {"fit_quality", g.fit_quality},
              {"candidate_delta_deviation", g.candidate_delta_deviation}};
}

GrowthTable growth_table_from_json(const Json& j)
{
  GrowthTable g;
  g.kind = probe_kind_from_string(text(j, "kind", "growth table"));
  g.radii = numbers(j, "radii", "growth table");
  g.masses = numbers(j, "masses", "growth table");
  g.fitted_exponent = number(j, "fitted_exponent", "growth table");
  g.fit_quality = number(j, "fit_quality", "growth table");
  g.candidate_delta_deviation = number(j, "candidate_delta_deviation", "growth table");
  return g;
}

Json lie_table_to_json(const std::vector<LieRow>& rows)
{
  Json a = Json::array();
  for (const LieRow& r : rows) a.push_back(Json{{"m", r.m}, {"error", r.error}});
  return Json{{"rows", a}};
}

Json parse_json(const std::string& content, const std::string& source)
{
  try {
    return Json::parse(content);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

void write_delta_csv(std::ostream& os, const DeltaReport& r)
{
  const int n = r.samples.empty() ? 0 : r.samples.front().xi.size();
  for (int i = 0; i < n; ++i) os << "xi" << i << ',';
  os << "delta,err\n" << std::setprecision(17);
  for (const DeltaSample& s : r.samples) {
    for (int i = 0; i < n; ++i) os << s.xi[i] << ',';
    os << s.delta << ',' << s.quad_error << '\n';
  }
}

void write_growth_csv(std::ostream& os, const GrowthTable& g)
{
  os << "R,mass\n" << std::setprecision(17);
  for (std::size_t i = 0; i < g.radii.size(); ++i) os << g.radii[i] << ',' << g.masses[i] << '\n';
}

void write_lie_csv(std::ostream& os, const std::vector<LieRow>& rows)
{
  os << "m,error\n" << std::setprecision(17);
  for (const LieRow& r : rows) os << r.m << ',' << r.error << '\n';
}

ProbeKind probe_kind_from_string(std::string_view s)
{
  if (s == "TraceZeroDiagonal" || s == "trace-zero") return ProbeKind::TraceZeroDiagonal;
  if (s == "Rotation2D" || s == "rotation") return ProbeKind::Rotation2D;
  if (s == "NilpotentShear2D" || s == "shear") return ProbeKind::NilpotentShear2D;
  throw ParseError("unknown probe kind '" + std::string(s) + "'");
}

} // namespace dilation

#include "wns/serialize.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "wns/error.hpp"

namespace wns {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

json field_to_json(const SpectralField& f, const json& metadata) {
  json j;
  j["format"] = "wns-field";
  j["version"] = kFormatVersion;
  j["dims"] = f.grid().dims();
  j["n"] = f.grid().n();
  j["components"] = f.components();
  j["convention"] = kConventionTag;
  j["order"] = "lexicographic";
  std::vector<double> flat;
  flat.reserve(2 * f.coefficients().size());
  for (const auto& z : f.coefficients()) {
    flat.push_back(z.real());
    flat.push_back(z.imag());
  }
  j["coefficients"] = std::move(flat);
  j["metadata"] = metadata;
  return j;
}

SpectralField field_from_json(const json& j) {
  require(j.value("format", "") == "wns-field", ErrorCode::io, "not a wns-field document");
  require(j.value("convention", "") == kConventionTag, ErrorCode::io,
          "unsupported Fourier convention tag");
  const GridSpec grid = GridSpec::make(j.at("dims").get<int>(), j.at("n").get<int>());
  SpectralField f(grid, j.at("components").get<int>());
  const auto flat = j.at("coefficients").get<std::vector<double>>();
  require(flat.size() == 2 * f.coefficients().size(), ErrorCode::io,
          "coefficient count does not match grid");
  auto coeffs = f.coefficients();
  for (std::size_t q = 0; q < coeffs.size(); ++q) coeffs[q] = {flat[2 * q], flat[2 * q + 1]};
  return f;
}

namespace {

template <class T>
void put(std::ostream& os, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  is.read(buf, sizeof(T));
  require(static_cast<bool>(is), ErrorCode::io, "truncated binary stream");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

void put_string(std::ostream& os, const std::string& s) {
  put<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& is) {
  const auto len = get<std::uint32_t>(is);
  std::string s(len, '\0');
  is.read(s.data(), len);
  require(static_cast<bool>(is), ErrorCode::io, "truncated binary stream");
  return s;
}

void put_header(std::ostream& os, const char* magic, const SpectralField& f, const json& meta) {
  os.write(magic, 4);
  put<std::uint32_t>(os, kFormatVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().dims()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().n()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.components()));
  put_string(os, kConventionTag);
  put_string(os, meta.dump());
}

struct Header {
  GridSpec grid;
  int components;
  json metadata;
};

Header get_header(std::istream& is, const char* magic) {
  char m[4];
  is.read(m, 4);
  require(static_cast<bool>(is) && std::memcmp(m, magic, 4) == 0, ErrorCode::io,
          std::string("bad magic, expected ") + std::string(magic, 4));
  const auto version = get<std::uint32_t>(is);
  require(version == kFormatVersion, ErrorCode::io, "unsupported format version");
  const int dims = static_cast<int>(get<std::uint32_t>(is));
  const int n = static_cast<int>(get<std::uint32_t>(is));
  const int comps = static_cast<int>(get<std::uint32_t>(is));
  require(get_string(is) == kConventionTag, ErrorCode::io, "unsupported Fourier convention tag");
  const std::string meta = get_string(is);
  return {GridSpec::make(dims, n), comps, meta.empty() ? json::object() : json::parse(meta)};
}

void put_coefficients(std::ostream& os, const SpectralField& f) {
  put<std::uint64_t>(os, f.coefficients().size());
  for (const auto& z : f.coefficients()) {
    put<double>(os, z.real());
    put<double>(os, z.imag());
  }
}

void get_coefficients(std::istream& is, SpectralField& f) {
  const auto count = get<std::uint64_t>(is);
  require(count == f.coefficients().size(), ErrorCode::io, "coefficient count mismatch");
  for (auto& z : f.coefficients()) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    z = {re, im};
  }
}

}  // namespace

void write_field_binary(std::ostream& os, const SpectralField& f, const json& metadata) {
  put_header(os, "WNSF", f, metadata);
  put_coefficients(os, f);
}

SpectralField read_field_binary(std::istream& is, json* metadata) {
  Header h = get_header(is, "WNSF");
  SpectralField f(h.grid, h.components);
  get_coefficients(is, f);
  if (metadata) *metadata = std::move(h.metadata);
  return f;
}

void write_trajectory_binary(std::ostream& os, const Trajectory& v, const json& metadata) {
  put_header(os, "WNST", v[0], metadata);
  put<std::uint64_t>(os, v.size());
  for (double t : v.times().times()) put<double>(os, t);
  for (std::size_t m = 0; m < v.size(); ++m) put_coefficients(os, v[m]);
}

Trajectory read_trajectory_binary(std::istream& is, json* metadata) {
  Header h = get_header(is, "WNST");
  const auto samples = get<std::uint64_t>(is);
  std::vector<double> times(samples);
  for (auto& t : times) t = get<double>(is);
  std::vector<SpectralField> fields(samples, SpectralField(h.grid, h.components));
  for (auto& f : fields) get_coefficients(is, f);
  if (metadata) *metadata = std::move(h.metadata);
  return Trajectory(TimeGrid(std::move(times)), std::move(fields));
}

json to_json(const NormReport& r) {
  json j;
  j["x_minus1"] = r.x_minus1;
  j["x1"] = r.x1;
  j["triple"] = r.triple;
  j["time_grid"] = r.time_grid;
  j["quadrature"] = r.quadrature;
  if (r.x1_tail_estimate) j["x1_tail_estimate"] = *r.x1_tail_estimate;
  return j;
}

json to_json(const PicardReport& r) {
  json j;
  j["iterations"] = r.iterations;
  j["increment_norms"] = r.increment_norms;
  j["contraction_ratios"] = r.contraction_ratios;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["heat_norm"] = r.heat_norm;
  j["solution_norm"] = r.solution_norm;
  j["warnings"] = r.warnings;
  return j;
}

json to_json(const ConstantEstimate& c) {
  json j;
  j["mu"] = c.mu;
  j["trials"] = c.trials;
  j["C_empirical"] = c.C_empirical;
  j["eta"] = c.eta;
  j["epsilon0"] = c.epsilon0;
  j["argmax_descriptor"] = c.argmax_descriptor;
  j["sampler"] = c.sampler;
  j["seed"] = c.seed;
  return j;
}

namespace {

json to_json(const InequalityCount& c) {
  return {{"checks", c.checks}, {"violations", c.violations}, {"max_exponent", c.max_exponent}};
}

}  // namespace

json to_json(const DiscretenessReport& r) {
  json j;
  j["mu"] = r.mu;
  j["alpha"] = r.alpha;
  j["n"] = r.n;
  j["time_pairs"] = r.time_pairs;
  j["discreteness_euclid"] = to_json(r.discreteness_euclid);
  j["discreteness_l1"] = to_json(r.discreteness_l1);
  j["triangle_euclid"] = to_json(r.triangle_euclid);
  j["triangle_l1"] = to_json(r.triangle_l1);
  j["heat_weight_euclid"] = to_json(r.heat_weight_euclid);
  j["heat_weight_aux"] = to_json(r.heat_weight_aux);
  j["heat_weight_l1"] = to_json(r.heat_weight_l1);
  j["violations"] = r.total_violations();
  return j;
}

json to_json(const DependenceReport& r) {
  json j;
  j["mu"] = r.mu;
  j["C"] = r.C;
  j["u0_norm"] = r.u0_norm;
  j["v0_norm"] = r.v0_norm;
  j["data_difference"] = r.data_difference;
  j["solution_difference"] = r.solution_difference;
  j["lipschitz_factor"] = r.lipschitz_factor;
  j["bound"] = r.bound;
  j["slack"] = r.slack;
  j["holds"] = r.holds;
  j["identity_residual"] = r.identity_residual;
  j["converged"] = r.converged;
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // nlohmann's serializer emits the shortest representation that
  // round-trips.
  return json(x).dump();
}

void write_radius_csv(std::ostream& os, const RadiusSeries& s, const json& provenance) {
  os << "# " << provenance.dump() << "\n";
  os << "t,rho,fit_rms,shells_used,bound_sqrt,bound_linear,bound,"
        "weighted_norm_sqrt,weighted_norm_linear,margin,crossover\n";
  const double crossover = 1.0 / (s.alpha * s.alpha);
  for (std::size_t m = 0; m < s.estimates.size(); ++m) {
    const auto& e = s.estimates[m];
    const double nan = std::nan("");
    const double rho = e.valid ? e.rho : nan;
    os << format_double(e.t) << ',' << format_double(rho) << ','
       << format_double(e.valid ? e.fit_rms : nan) << ',' << e.shells_used << ','
       << format_double(e.bound_sqrt) << ',' << format_double(e.bound_linear) << ','
       << format_double(e.bound) << ',' << format_double(s.weighted_x_minus1_sqrt[m]) << ','
       << format_double(s.weighted_x_minus1_linear[m]) << ','
       << format_double(e.valid ? rho - e.bound : nan) << ',' << format_double(crossover)
       << '\n';
  }
}

}  // namespace wns

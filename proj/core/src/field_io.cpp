#include "iflow/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "iflow/operators.hpp"

static_assert(std::endian::native == std::endian::little,
              "field payloads are written as native little-endian float64");

namespace iflow {

namespace {

constexpr const char* kMagic = "IFLOW1";

std::string header_line(const char* kind, const GridSpec& spec) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s %s %d %.17g\n", kMagic, kind, spec.n(),
                spec.length());
  return buf;
}

void write_payload(std::ofstream& out, const std::vector<double>& values) {
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

struct Header {
  std::string kind;
  int n = 0;
  double length = 0.0;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing header");
  std::istringstream hs(line);
  std::string magic;
  Header h;
  if (!(hs >> magic >> h.kind >> h.n >> h.length) || magic != kMagic) {
    throw FormatError(path.string() + ": bad header \"" + line + "\"");
  }
  std::string trailing;
  if (hs >> trailing) throw FormatError(path.string() + ": trailing header fields");
  if (h.kind != "scalar" && h.kind != "vector") {
    throw FormatError(path.string() + ": unknown kind \"" + h.kind + "\"");
  }
  if (h.n < 6 || h.n % 2 != 0 || !(h.length > 0.0) || !std::isfinite(h.length)) {
    throw FormatError(path.string() + ": bad grid shape");
  }
  return h;
}

std::vector<double> read_payload(std::ifstream& in, size_t count,
                                 const std::filesystem::path& path) {
  std::vector<double> values(count);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<size_t>(in.gcount()) != count * sizeof(double)) {
    throw FormatError(path.string() + ": payload shorter than header n implies");
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw FormatError(path.string() + ": payload longer than header n implies");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw FormatError(path.string() + ": non-finite sample");
  }
  return values;
}

}  // namespace

void write_field(const ScalarField& f, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  const std::string header = header_line("scalar", f.spec());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  write_payload(out, f.values());
  if (!out) throw Error("write failed: " + path.string());
}

void write_field(const VectorField& f, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  const std::string header = header_line("vector", f.spec());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  write_payload(out, f.u_values());
  write_payload(out, f.v_values());
  if (!out) throw Error("write failed: " + path.string());
}

AnyField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open: " + path.string());
  const Header h = read_header(in, path);
  const GridSpec spec(h.n, h.length);
  const size_t nodes = static_cast<size_t>(spec.node_count());
  if (h.kind == "scalar") {
    std::vector<double> values = read_payload(in, nodes, path);
    ScalarField f(spec);
    f.values() = std::move(values);
    return f;
  }
  std::vector<double> values = read_payload(in, 2 * nodes, path);
  VectorField f(spec);
  std::copy(values.begin(), values.begin() + nodes, f.u_values().begin());
  std::copy(values.begin() + nodes, values.end(), f.v_values().begin());
  return f;
}

ScalarField read_scalar_field(const std::filesystem::path& path) {
  AnyField f = read_field(path);
  if (auto* s = std::get_if<ScalarField>(&f)) return std::move(*s);
  throw FormatError(path.string() + ": expected a scalar field");
}

VectorField read_vector_field(const std::filesystem::path& path) {
  AnyField f = read_field(path);
  if (auto* v = std::get_if<VectorField>(&f)) return std::move(*v);
  throw FormatError(path.string() + ": expected a vector field");
}

void write_divergence_image(const VectorField& v, const std::filesystem::path& pgm_path) {
  const ScalarField div = divergence(v);
  double lo = div.values().front();
  double hi = lo;
  for (double d : div.values()) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }

  const int n = div.n();
  std::ofstream out = open_for_write(pgm_path);
  out << "P5\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(n));
  const double range = hi - lo;
  // Image rows run top to bottom; the grid's y axis points up.
  for (int j = n - 1; j >= 0; --j) {
    for (int i = 0; i < n; ++i) {
      if (range > 0.0) {
        const double t = (div.at(i, j) - lo) / range;
        row[static_cast<size_t>(i)] =
            static_cast<unsigned char>(std::lround(t * 255.0));
      } else {
        row[static_cast<size_t>(i)] = 128;
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()), n);
  }
  if (!out) throw Error("write failed: " + pgm_path.string());

  nlohmann::json sidecar{{"min", lo}, {"max", hi}};
  std::filesystem::path sidecar_path = pgm_path;
  sidecar_path.replace_extension(".json");
  std::ofstream meta = open_for_write(sidecar_path);
  meta << sidecar.dump(2) << "\n";
}

void write_field_csv(const VectorField& f, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << "x,y,u,v\n";
  char buf[160];
  const double dx = f.spec().dx();
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", i * dx, j * dx,
                    f.u(i, j), f.v(i, j));
      out << buf;
    }
  }
}

}  // namespace iflow

#include "corrtree/dataset.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "corrtree/numeric.hpp"

namespace corrtree {

namespace {

constexpr char kMagic[4] = {'C', 'T', 'D', 'S'};
constexpr std::uint16_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "dataset serialization assumes a little-endian host");

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const char* what) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error(std::string("dataset file truncated at ") + what);
  return value;
}

}  // namespace

void validate(const DataSet& ds) {
  if (ds.n < 0 || ds.d < 0) throw std::invalid_argument("negative dataset dimensions");
  const auto expected = static_cast<std::size_t>(ds.n) * static_cast<std::size_t>(ds.d);
  if (ds.points.size() != expected)
    throw std::invalid_argument("dataset points size does not match n*d");
  if (ds.labels.size() != static_cast<std::size_t>(ds.n))
    throw std::invalid_argument("dataset labels size does not match n");
}

DataSet normalize_rows(const DataSet& ds) {
  validate(ds);
  DataSet out = ds;
  out.unit_norm = true;
  for (int i = 0; i < ds.n; ++i) {
    const double norm = l2_norm(ds.row(i));
    if (norm == 0.0) throw std::invalid_argument("degenerate data point: zero row");
    double* row = out.points.data() + static_cast<std::size_t>(i) * ds.d;
    for (int k = 0; k < ds.d; ++k) row[k] /= norm;
  }
  return out;
}

DataSet random_dataset(int n, int d, RngSpec rng, bool unit_norm) {
  if (n <= 0 || d <= 0) throw std::invalid_argument("dataset dimensions must be positive");
  Rng gen(rng);
  DataSet ds;
  ds.n = n;
  ds.d = d;
  ds.unit_norm = false;
  ds.points.resize(static_cast<std::size_t>(n) * d);
  ds.labels.resize(n);
  for (auto& x : ds.points) x = gen.normal();
  for (auto& y : ds.labels) y = gen.sign();
  if (unit_norm) ds = normalize_rows(ds);
  return ds;
}

void save_dataset(const DataSet& ds, const std::string& path) {
  validate(ds);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  write_raw(out, kVersion);
  write_raw(out, static_cast<std::uint32_t>(ds.n));
  write_raw(out, static_cast<std::uint32_t>(ds.d));
  write_raw(out, static_cast<std::uint8_t>(ds.unit_norm ? 1 : 0));
  out.write(reinterpret_cast<const char*>(ds.points.data()),
            static_cast<std::streamsize>(ds.points.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(ds.labels.data()),
            static_cast<std::streamsize>(ds.labels.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

DataSet load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a dataset file (bad magic): " + path);
  const auto version = read_raw<std::uint16_t>(in, "version");
  if (version != kVersion)
    throw std::runtime_error("unsupported dataset version " + std::to_string(version));
  const auto n = read_raw<std::uint32_t>(in, "n");
  const auto d = read_raw<std::uint32_t>(in, "d");
  const auto flag = read_raw<std::uint8_t>(in, "unit-norm flag");
  // 2^31 doubles is already a 16 GiB payload; anything bigger than that in
  // either dimension is a corrupt header, not a real dataset.
  if (n > (1u << 31) || d > (1u << 31) ||
      (d != 0 && n > static_cast<std::uint64_t>(-1) / sizeof(double) / d))
    throw std::runtime_error("dataset header declares an implausible size");
  DataSet ds;
  ds.n = static_cast<int>(n);
  ds.d = static_cast<int>(d);
  ds.unit_norm = flag != 0;
  ds.points.resize(static_cast<std::size_t>(n) * d);
  ds.labels.resize(n);
  in.read(reinterpret_cast<char*>(ds.points.data()),
          static_cast<std::streamsize>(ds.points.size() * sizeof(double)));
  if (!in) throw std::runtime_error("dataset file truncated at points: " + path);
  in.read(reinterpret_cast<char*>(ds.labels.data()),
          static_cast<std::streamsize>(ds.labels.size() * sizeof(double)));
  if (!in) throw std::runtime_error("dataset file truncated at labels: " + path);
  return ds;
}

void save_dataset_csv(const DataSet& ds, const std::string& path) {
  validate(ds);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (int k = 0; k < ds.d; ++k) out << 'x' << k << ',';
  out << "y\n";
  char buf[32];
  for (int i = 0; i < ds.n; ++i) {
    auto row = ds.row(i);
    for (int k = 0; k < ds.d; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[k]);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", ds.labels[i]);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

DataSet load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty csv file: " + path);
  int d = 0;
  {
    std::stringstream ss(header);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.empty() || fields.back() != "y")
      throw std::runtime_error("csv header must end with a y column: " + path);
    d = static_cast<int>(fields.size()) - 1;
    for (int k = 0; k < d; ++k) {
      if (fields[k] != "x" + std::to_string(k))
        throw std::runtime_error("unexpected csv column '" + fields[k] + "' in " + path);
    }
  }
  DataSet ds;
  ds.d = d;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(ss, field, ',')) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(field, &pos);
      } catch (const std::exception&) {
        throw std::runtime_error("bad number '" + field + "' at " + path + ":" +
                                 std::to_string(line_no));
      }
      if (pos != field.size())
        throw std::runtime_error("bad number '" + field + "' at " + path + ":" +
                                 std::to_string(line_no));
      values.push_back(v);
    }
    if (static_cast<int>(values.size()) != d + 1)
      throw std::runtime_error("wrong field count at " + path + ":" +
                               std::to_string(line_no));
    ds.points.insert(ds.points.end(), values.begin(), values.end() - 1);
    ds.labels.push_back(values.back());
    ++ds.n;
  }
  validate(ds);
  return ds;
}

}  // namespace corrtree

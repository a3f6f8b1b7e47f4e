#include "sepvol/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sepvol/error.hpp"

namespace sepvol::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string frames_csv(std::span<const FrameRecord> records) {
  std::string out = "frame_index,entanglement,fraction,std_error\n";
  for (const auto& r : records) {
    out += std::to_string(r.frame_index) + "," + format_double(r.frame_entanglement) +
           "," + format_double(r.fraction.mean) + "," +
           format_double(r.fraction.std_error) + "\n";
  }
  return out;
}

std::string scan_csv(std::span<const ScanRow> rows) {
  std::string out =
      "d_A,d_B,mean,min,n_frames,n_points,min_std_error,mean_entanglement\n";
  for (const auto& r : rows) {
    out += std::to_string(r.dims.dim_a()) + "," + std::to_string(r.dims.dim_b()) +
           "," + format_double(r.mean_fraction) + "," + format_double(r.min_fraction) +
           "," + std::to_string(r.n_frames) + "," + std::to_string(r.n_points) + "," +
           format_double(r.min_std_error) + "," + format_double(r.mean_entanglement) +
           "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const SweepNode> nodes) {
  std::string out = "theta,alpha,fraction,std_error\n";
  for (const auto& n : nodes) {
    out += format_double(n.theta) + "," + format_double(n.alpha) + "," +
           format_double(n.fraction.mean) + "," + format_double(n.fraction.std_error) +
           "\n";
  }
  return out;
}

std::string mesh_csv(const RegionMesh& mesh) {
  std::string out = "x,y,z,class\n";
  const std::size_t r = mesh.resolution;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        out += format_double(mesh.cell_center(i)) + "," +
               format_double(mesh.cell_center(j)) + "," +
               format_double(mesh.cell_center(k)) + "," + to_string(mesh.at(i, j, k)) +
               "\n";
      }
  return out;
}

std::string histogram_csv(const FrameHistograms& h) {
  std::string out = "fraction_bin,entanglement_bin,count\n";
  for (std::size_t f = 0; f < kHistogramBins; ++f)
    for (std::size_t e = 0; e < kHistogramBins; ++e) {
      out += std::to_string(f) + "," + std::to_string(e) + "," +
             std::to_string(h.joint[f * kHistogramBins + e]) + "\n";
    }
  return out;
}

std::string radius_csv(double decay_rate, long long d_max) {
  std::string out = "d,ratio\n";
  for (long long d = 2; d <= d_max; ++d)
    out += std::to_string(d) + "," + format_double(radius_ratio(d, decay_rate)) + "\n";
  return out;
}

std::vector<ScanRow> parse_scan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("scan csv: empty input");
  const auto header = split(line, ',');
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw InvalidInput("scan csv: missing column '" + name + "'");
  };
  const std::size_t c_a = column("d_A"), c_b = column("d_B"), c_mean = column("mean"),
                    c_min = column("min"), c_frames = column("n_frames"),
                    c_points = column("n_points");
  std::vector<ScanRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() < header.size()) throw InvalidInput("scan csv: short row '" + line + "'");
    try {
      ScanRow row;
      row.dims = BipartiteDims(std::stoul(f[c_a]), std::stoul(f[c_b]));
      row.mean_fraction = std::stod(f[c_mean]);
      row.min_fraction = std::stod(f[c_min]);
      row.n_frames = std::stoul(f[c_frames]);
      row.n_points = std::stoull(f[c_points]);
      rows.push_back(row);
    } catch (const std::logic_error& e) {
      throw InvalidInput("scan csv: malformed row '" + line + "'");
    }
  }
  return rows;
}

nlohmann::json frame_to_json(const Frame& frame) {
  nlohmann::json vectors = nlohmann::json::array();
  for (const auto& v : frame.vectors()) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& z : v) {
      comps.push_back(z.real());
      comps.push_back(z.imag());
    }
    vectors.push_back(std::move(comps));
  }
  return {{"dims", {frame.dims().dim_a(), frame.dims().dim_b()}},
          {"vectors", std::move(vectors)}};
}

Frame frame_from_json(const nlohmann::json& j) {
  try {
    const auto& dims_json = j.at("dims");
    if (!dims_json.is_array() || dims_json.size() != 2) {
      throw InvalidInput("frame json: 'dims' must be [d_A, d_B]");
    }
    const BipartiteDims dims(dims_json[0].get<std::size_t>(),
                             dims_json[1].get<std::size_t>());
    std::vector<ComplexVector> vectors;
    for (const auto& comps : j.at("vectors")) {
      if (comps.size() != 2 * dims.total()) {
        throw InvalidInput("frame json: each vector needs " +
                           std::to_string(2 * dims.total()) + " numbers");
      }
      ComplexVector v(dims.total());
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = Complex(comps[2 * i].get<double>(), comps[2 * i + 1].get<double>());
      vectors.push_back(std::move(v));
    }
    return Frame(dims, std::move(vectors));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("frame json: ") + e.what());
  }
}

Frame read_frame_file(const std::filesystem::path& path) {
  try {
    return frame_from_json(nlohmann::json::parse(read_text(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("frame file " + path.string() + ": " + e.what());
  }
}

void write_frame_file(const std::filesystem::path& path, const Frame& frame) {
  write_text(path, frame_to_json(frame).dump(2) + "\n");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("write failed for " + path.string());
}

}  // namespace sepvol::io

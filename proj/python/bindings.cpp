#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sepvol/error.hpp"
#include "sepvol/estimator.hpp"
#include "sepvol/frames.hpp"
#include "sepvol/io.hpp"
#include "sepvol/linalg.hpp"
#include "sepvol/sampling.hpp"
#include "sepvol/separability.hpp"

namespace py = pybind11;
using namespace sepvol;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw InvalidInput("expected a square 2-d array");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  std::vector<Complex> entries(a.data(), a.data() + n * n);
  return ComplexMatrix(n, std::move(entries));
}

CArray to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  CArray out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

BipartiteDims to_dims(const std::pair<std::size_t, std::size_t>& d) {
  return {d.first, d.second};
}

Subsystem to_side(const std::string& side) {
  if (side == "A") return Subsystem::A;
  if (side == "B") return Subsystem::B;
  throw InvalidInput("subsystem must be 'A' or 'B'");
}

py::dict estimate_dict(const VolumeEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["n_samples"] = e.n_samples;
  d["n_separable"] = e.n_separable;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monte Carlo volume of separable bipartite states";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);

  m.def("orbit_param_count", [](std::size_t a, std::size_t b) {
    return BipartiteDims(a, b).orbit_param_count();
  });

  m.def("hermitian_eigenvalues",
        [](const CArray& h) { return hermitian_eigenvalues(to_matrix(h)); });
  m.def("is_psd", [](const CArray& h, double tol) { return is_psd(to_matrix(h), tol); },
        py::arg("h"), py::arg("tol") = kDefaultPsdTolerance);
  m.def("partial_transpose",
        [](const CArray& rho, std::pair<std::size_t, std::size_t> dims, const std::string& side) {
          return to_array(partial_transpose(to_matrix(rho), to_dims(dims), to_side(side)));
        },
        py::arg("rho"), py::arg("dims"), py::arg("side") = "B");

  m.def("haar_unitary",
        [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
          auto rng = derive_stream(seed, stream);
          return to_array(haar_unitary(d, rng));
        },
        py::arg("d"), py::arg("seed"), py::arg("stream_id") = 0);
  m.def("sample_simplex",
        [](std::size_t d, std::uint64_t seed, std::uint64_t stream) {
          auto rng = derive_stream(seed, stream);
          const auto p = sample_simplex(d, rng);
          return std::vector<double>(p.probs().begin(), p.probs().end());
        },
        py::arg("d"), py::arg("seed"), py::arg("stream_id") = 0);

  py::class_<Frame>(m, "Frame")
      .def_property_readonly("dims",
                             [](const Frame& f) {
                               return std::make_pair(f.dims().dim_a(), f.dims().dim_b());
                             })
      .def_property_readonly("basis", [](const Frame& f) { return to_array(f.basis_matrix()); })
      .def("entanglement",
           [](const Frame& f, const std::string& measure) {
             return frame_entanglement(f, parse_entanglement_measure(measure));
           },
           py::arg("measure") = "entropy")
      .def("to_json", [](const Frame& f) { return io::frame_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return io::frame_from_json(nlohmann::json::parse(text));
      })
      .def("__len__", &Frame::size);

  m.def("frame_from_unitary",
        [](const CArray& u, std::pair<std::size_t, std::size_t> dims) {
          return frame_from_unitary(to_matrix(u), to_dims(dims));
        });
  m.def("computational_frame", [](std::pair<std::size_t, std::size_t> dims) {
    return computational_frame(to_dims(dims));
  });
  m.def("two_param_frame", &two_param_frame, py::arg("theta"), py::arg("alpha"));
  m.def("canonical_two_qubit_frame",
        [](double theta1, double alpha, double theta2, double theta3, double phi, double phi3) {
          return canonical_two_qubit_frame({theta1, alpha, theta2, theta3, phi, phi3});
        },
        py::arg("theta1"), py::arg("alpha"), py::arg("theta2"), py::arg("theta3"),
        py::arg("phi"), py::arg("phi3"));
  m.def("qubit_qutrit_frame", &qubit_qutrit_frame, py::arg("theta"), py::arg("alpha"),
        py::arg("beta"));
  m.def("bell_frame",
        [](std::pair<std::size_t, std::size_t> dims) { return bell_frame(to_dims(dims)); });
  m.def("assemble_state", [](const Frame& f, std::vector<double> p) {
    return to_array(assemble_state(f, SimplexPoint(std::move(p))));
  });

  m.def("ppt_separable",
        [](const CArray& rho, std::pair<std::size_t, std::size_t> dims, double tol) {
          return ppt_separable(to_matrix(rho), to_dims(dims), tol);
        },
        py::arg("rho"), py::arg("dims"), py::arg("tol") = kDefaultPsdTolerance);
  m.def("two_param_separable", [](double theta, double alpha, std::vector<double> p) {
    return two_param_separable(theta, alpha, SimplexPoint(std::move(p)));
  });
  m.def("octahedron_member",
        [](std::vector<double> p) { return octahedron_member(SimplexPoint(std::move(p))); });
  m.def("simplex_to_xyz", [](std::vector<double> p) {
    const auto c = simplex_to_xyz(SimplexPoint(std::move(p)));
    return std::make_tuple(c.x, c.y, c.z);
  });
  m.def("xyz_to_simplex", [](double x, double y, double z) {
    const auto p = xyz_to_simplex({x, y, z});
    return std::vector<double>(p.probs().begin(), p.probs().end());
  });
  m.def("region_mesh",
        [](const Frame& f, std::size_t resolution, unsigned threads) {
          const auto mesh = region_mesh(f, resolution, threads);
          const auto r = static_cast<py::ssize_t>(resolution);
          py::array_t<std::uint8_t> cells({r, r, r});
          std::transform(mesh.cells.begin(), mesh.cells.end(), cells.mutable_data(),
                         [](CellClass c) { return static_cast<std::uint8_t>(c); });
          return cells;
        },
        py::arg("frame"), py::arg("resolution"), py::arg("threads") = 1,
        "Grid of cell classes: 0 outside, 1 separable, 2 entangled.");

  m.def("frame_fraction",
        [](const Frame& f, std::uint64_t n_points, std::uint64_t seed, std::uint64_t stream) {
          auto rng = derive_stream(seed, stream);
          VolumeEstimate e;
          {
            py::gil_scoped_release release;
            e = frame_fraction(f, n_points, rng);
          }
          return estimate_dict(e);
        },
        py::arg("frame"), py::arg("n_points"), py::arg("seed"), py::arg("stream_id") = 0);
  m.def("global_volume",
        [](std::pair<std::size_t, std::size_t> dims, std::size_t n_frames, std::uint64_t n_points,
           std::uint64_t seed, unsigned threads) {
          GlobalVolume v;
          {
            py::gil_scoped_release release;
            v = global_volume(to_dims(dims), n_frames, n_points, seed, {threads});
          }
          py::dict d = estimate_dict(v.pooled);
          d["frame_std_error"] = v.frame_std_error;
          std::vector<double> fractions, ents;
          for (const auto& r : v.frames) {
            fractions.push_back(r.fraction.mean);
            ents.push_back(r.frame_entanglement);
          }
          d["fractions"] = fractions;
          d["entanglements"] = ents;
          return d;
        },
        py::arg("dims"), py::arg("n_frames"), py::arg("n_points"), py::arg("seed"),
        py::arg("threads") = 0);
  m.def("sweep_two_param",
        [](std::size_t grid, std::uint64_t n_points, std::uint64_t seed, unsigned threads) {
          std::vector<SweepNode> nodes;
          {
            py::gil_scoped_release release;
            nodes = sweep_two_param(grid, n_points, seed, {threads});
          }
          std::vector<std::tuple<double, double, double, double>> out;
          for (const auto& n : nodes)
            out.emplace_back(n.theta, n.alpha, n.fraction.mean, n.fraction.std_error);
          return out;
        },
        py::arg("grid_size"), py::arg("n_points"), py::arg("seed"), py::arg("threads") = 0);
  m.def("fit_exponential",
        [](std::vector<double> total_dims, std::vector<double> means) {
          const auto fit = fit_exponential(total_dims, means);
          return std::make_tuple(fit.decay_rate, fit.log_intercept, fit.max_abs_residual);
        },
        "Returns (decay_rate, log_intercept, max_abs_residual).");
  m.def("radius_ratio", &radius_ratio, py::arg("d"), py::arg("decay_rate"));
}

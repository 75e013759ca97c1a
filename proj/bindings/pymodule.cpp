#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "coarsegeo/axioms.hpp"
#include "coarsegeo/boundary.hpp"
#include "coarsegeo/builders.hpp"
#include "coarsegeo/equivalence.hpp"
#include "coarsegeo/functions.hpp"
#include "coarsegeo/runner.hpp"

namespace py = pybind11;
using namespace coarsegeo;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::null:
      return py::none();
    case nlohmann::ordered_json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::ordered_json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::ordered_json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::ordered_json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::ordered_json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::ordered_json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case nlohmann::ordered_json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) {
        out[py::str(k)] = json_to_py(v);
      }
      return out;
    }
    default:
      return py::none();
  }
}

nlohmann::json py_json(const std::string& text) {
  return nlohmann::json::parse(text);
}

struct PySpace {
  SpacePtr ptr;
};

struct PyProduct {
  ProductPtr ptr;
};

SampleSpec spec_from_json_text(const std::string& text) {
  return parse_sample_spec(py_json(text), "sample");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "controlled products and finite-scale boundaries on metric "
            "spaces";
  m.attr("__version__") = "0.1.0";

  py::register_exception<SpecError>(m, "SpecError");
  py::register_exception<DomainError>(m, "DomainError");

  py::class_<PySpace>(m, "Space")
      .def_property_readonly("kind",
                             [](const PySpace& s) { return s.ptr->kind(); })
      .def_property_readonly("name",
                             [](const PySpace& s) { return s.ptr->name(); })
      .def_property_readonly(
          "basepoint", [](const PySpace& s) { return s.ptr->basepoint(); })
      .def("distance",
           [](const PySpace& s, PointId x, PointId y) {
             return s.ptr->distance(x, y);
           })
      .def("ball",
           [](const PySpace& s, double r) { return s.ptr->ball(r); })
      .def("label",
           [](const PySpace& s, PointId p) { return s.ptr->label(p); })
      .def("__repr__", [](const PySpace& s) {
        return "<Space " + s.ptr->kind() + ":" + s.ptr->name() + ">";
      });

  py::class_<PyProduct>(m, "Product")
      .def("value",
           [](const PyProduct& p, PointId x, PointId y) {
             return p.ptr->value(x, y);
           })
      .def("__call__",
           [](const PyProduct& p, PointId x, PointId y) {
             return p.ptr->value(x, y);
           })
      .def_property_readonly("descriptor",
                             [](const PyProduct& p) {
                               return json_to_py(p.ptr->descriptor());
                             })
      .def_property_readonly("space", [](const PyProduct& p) {
        return PySpace{p.ptr->space_ptr()};
      });

  m.def("build_space", [](const std::string& spec) {
    return PySpace{build_space(py_json(spec))};
  });
  m.def("build_product", [](const std::string& descriptor, const PySpace& s) {
    return PyProduct{build_product(py_json(descriptor), s.ptr)};
  });

  m.def("sample", [](const PySpace& s, const std::string& spec) {
    return sample(*s.ptr, spec_from_json_text(spec));
  });
  m.def("annulus_sample",
        [](const PySpace& s, double r_in, double r_out,
           const std::string& spec) {
          return annulus_sample(*s.ptr, r_in, r_out,
                                spec_from_json_text(spec));
        });

  m.def("gromov_product", [](const PySpace& s, PointId x, PointId y) {
    return gromov_product(*s.ptr, x, y);
  });
  m.def("trivial_product", [](const PySpace& s, PointId x, PointId y) {
    return trivial_product(*s.ptr, x, y);
  });

  m.def(
      "extract_cp_envelopes",
      [](const PyProduct& p, const std::vector<PointId>& pts,
         std::size_t triple_budget, std::uint64_t seed) {
        ScanBudget b{triple_budget, seed, 0};
        auto env = extract_cp_envelopes(*p.ptr, pts, b);
        nlohmann::ordered_json j = {{"rho1", envelope_to_json(env.rho1)},
                                    {"rho2", envelope_to_json(env.rho2)},
                                    {"rho3", envelope_to_json(env.rho3)},
                                    {"census", env.census.to_json()}};
        return json_to_py(j);
      },
      py::arg("product"), py::arg("points"),
      py::arg("triple_budget") = 2'000'000, py::arg("seed") = 0);

  m.def(
      "delta",
      [](const PyProduct& p, const std::vector<PointId>& pts,
         std::size_t triple_budget, std::uint64_t seed) {
        ScanBudget b{triple_budget, seed, 0};
        auto res = product_delta(*p.ptr, pts, b);
        py::dict out;
        out["delta"] = res.delta;
        out["max_defect"] = res.max_defect;
        out["witness"] = res.witness;
        return out;
      },
      py::arg("product"), py::arg("points"),
      py::arg("triple_budget") = 2'000'000, py::arg("seed") = 0);

  m.def("check_cp4", [](const PyProduct& p, const std::vector<double>& ladder,
                        double cap, const std::vector<PointId>& pts) {
    return json_to_py(check_cp4(*p.ptr, ladder, cap, pts).to_json());
  });

  m.def("vn_related", [](const PyProduct& p, double n, PointId x, PointId y) {
    return vn_related(*p.ptr, n, x, y);
  });

  m.def("shadow_cells",
        [](const PyProduct& p, double r_in, double r_out, double n,
           const std::string& spec) {
          auto cells =
              shadow_cells(*p.ptr, r_in, r_out, n, spec_from_json_text(spec));
          py::list out;
          for (const auto& c : cells) {
            py::dict d;
            d["representative"] = p.ptr->space().label(c.representative);
            d["members"] = c.members;
            out.append(d);
          }
          return out;
        });

  m.def("refinement_profile",
        [](const PyProduct& p, const std::vector<double>& radius_ladder,
           const std::vector<double>& n_ladder, const std::string& spec) {
          auto prof = refinement_profile(*p.ptr, radius_ladder, n_ladder,
                                         spec_from_json_text(spec));
          return json_to_py(prof.to_json(p.ptr->space()));
        });

  m.def("coarse_equivalence_check",
        [](const PyProduct& p, const PyProduct& q, const std::string& spec,
           const std::vector<double>& truncation,
           const std::vector<double>& keys) {
          ComparisonConfig cc;
          if (!truncation.empty()) cc.truncation_ladder = truncation;
          if (!keys.empty()) cc.key_ladder = keys;
          auto rep = coarse_equivalence_check(*p.ptr, *q.ptr,
                                              spec_from_json_text(spec), cc);
          return json_to_py(rep.to_json());
        },
        py::arg("p"), py::arg("q"), py::arg("sample"),
        py::arg("truncation") = std::vector<double>{},
        py::arg("keys") = std::vector<double>{});

  m.def("variation_profiles",
        [](const std::string& function_spec, const PyProduct& p,
           const std::vector<PointId>& pts, const std::vector<double>& q,
           const std::vector<double>& r, const std::vector<double>& b) {
          auto f = build_function(py_json(function_spec), p.ptr->space_ptr());
          return json_to_py(
              variation_profiles(f, *p.ptr, pts, q, r, b).to_json());
        });

  m.def("run_config", [](const std::string& config_text) {
    RunConfig cfg = parse_config(py_json(config_text));
    RunResult res = run(cfg);
    return py::make_tuple(res.exit_code, json_to_py(res.report));
  });
}

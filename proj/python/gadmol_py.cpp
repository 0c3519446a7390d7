//
// Project gadmol - Copyright 2026 The gadmol Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gadmol/config.hpp"
#include "gadmol/error.hpp"
#include "gadmol/evolver.hpp"
#include "gadmol/fingerprint.hpp"
#include "gadmol/grammar.hpp"
#include "gadmol/properties.hpp"
#include "gadmol/reference.hpp"
#include "gadmol/smiles.hpp"
#include "gadmol/tasks.hpp"

namespace py = pybind11;

namespace {

gadmol::MolecularGraph molecule_from(const std::string &text) {
  if (!text.empty() && text.front() == '[')
    return gadmol::decode(gadmol::parse_genotype(text));
  return gadmol::parse_smiles(text);
}

const gadmol::ReferenceSet &bundled_reference() {
  static const gadmol::ReferenceSet ref = gadmol::load_reference(GADMOL_DEFAULT_REFERENCE);
  return ref;
}

py::dict properties_of(const std::string &text) {
  const gadmol::PropertyRecord p =
      gadmol::penalized_logp(molecule_from(text), bundled_reference().norm);
  py::dict d;
  d["logp_raw"] = p.logp_raw;
  d["sa_raw"] = p.sa_raw;
  d["ring_raw"] = p.ring_raw;
  d["qed"] = p.qed;
  d["j"] = p.j;
  return d;
}

py::tuple run_config(const std::string &config_json) {
  gadmol::RunConfig cfg = gadmol::parse_config(config_json);
  gadmol::TaskOutput out;
  {
    py::gil_scoped_release release;
    const gadmol::ReferenceSet ref = cfg.reference.path.empty() && cfg.reference.synthetic == 0
                                         ? bundled_reference()
                                         : gadmol::load_reference_for(cfg);
    out = gadmol::run_task(cfg, ref);
  }
  return py::make_tuple(out.report_json, out.hash);
}

}  // namespace

PYBIND11_MODULE(_gadmol, m) {
  m.doc() = "Genetic-algorithm molecule design core";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<gadmol::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<gadmol::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<gadmol::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "decode", [](const std::string &g) { return gadmol::canonical(molecule_from(g)); },
      py::arg("genotype"), "Canonical SMILES of a genotype.");
  m.def(
      "encode",
      [](const std::string &s) { return gadmol::encode(gadmol::parse_smiles(s)).to_string(); },
      py::arg("smiles"));
  m.def(
      "canonical", [](const std::string &s) { return gadmol::canonical(molecule_from(s)); },
      py::arg("molecule"));
  m.def("properties", &properties_of, py::arg("molecule"),
        "Raw properties and j against the bundled reference set.");
  m.def(
      "tanimoto",
      [](const std::string &a, const std::string &b) {
        return gadmol::tanimoto(gadmol::fingerprint(molecule_from(a)),
                                gadmol::fingerprint(molecule_from(b)));
      },
      py::arg("a"), py::arg("b"));
  m.def("fitness", &gadmol::fitness, py::arg("objective"), py::arg("d"), py::arg("beta"));
  m.def("constrained_fitness", &gadmol::constrained_fitness, py::arg("j"), py::arg("sim"),
        py::arg("delta"));
  m.def(
      "kill_probabilities",
      [](const std::vector<double> &f) { return gadmol::kill_probabilities(f); },
      py::arg("fitnesses"));
  m.def(
      "normalize_config",
      [](const std::string &text) {
        return gadmol::config_to_json(gadmol::parse_config(text));
      },
      py::arg("config_json"));
  m.def("run", &run_config, py::arg("config_json"),
        "Run a task; returns (report_json, determinism_hash).");
  m.attr("__version__") = "0.1.0";
}

// SPDX-License-Identifier: Apache-2.0
#include "qbrain/presets.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace qbrain {

namespace {

// Shared settings of the collective-dynamics runs with N = 10 / 80.
SimulationConfig collective_run(int n_qubits, int n0) {
  SimulationConfig c;
  c.N = n_qubits;
  c.lmg = {0.05, 1.0, 0.0};
  c.plasticity = {1.0, 0.0, 0.5, 1.0, 0.5};
  c.initial = InitialCondition::excitations(n0);
  c.t_max = n_qubits == 10 ? 4000.0 : 10000.0;
  return c;
}

std::string tau_label(double tau) { return fmt::format("{}", tau); }

std::vector<Preset> build_catalog() {
  std::vector<Preset> out;

  // Bare LMG oscillations, N = 40; depression frozen at r = 1.
  for (double gamma : {1.0, 0.9}) {
    for (int percent : {100, 80, 60, 53}) {
      SimulationConfig c;
      c.N = 40;
      c.lmg = {2.0, gamma, 0.0};
      c.plasticity = {0.0, 0.0, 0.5, 1.0, 0.5};
      c.initial = InitialCondition::excited_fraction(percent / 100.0);
      c.t_max = 10000.0;
      out.push_back({fmt::format("fig1-gamma{}-p{}", gamma, percent), c,
                     fmt::format("Figure 1 panel {}, {}% excited; g0=2, tau_r=0", gamma == 1.0 ? "A" : "B", percent)});
    }
  }

  for (int n_qubits : {10, 80}) {
    out.push_back({fmt::format("fig2-N{}-half", n_qubits), collective_run(n_qubits, n_qubits / 2 - 1),
                   fmt::format("Figure 2 ({} qubits), N/2-1 excited; gamma=1, g0=0.05, tau_r=1", n_qubits)});
  }
  for (int n_qubits : {10, 80}) {
    out.push_back({fmt::format("fig3-N{}-none", n_qubits), collective_run(n_qubits, 0),
                   fmt::format("Figure 3 ({} qubits), none excited; gamma=1, g0=0.05, tau_r=1", n_qubits)});
    out.push_back({fmt::format("fig3-N{}-allup", n_qubits), collective_run(n_qubits, n_qubits),
                   fmt::format("Figure 3 ({} qubits), all excited; gamma=1, g0=0.05, tau_r=1", n_qubits)});
  }

  for (const char* kind : {"fidelity", "entropy"}) {
    out.push_back({fmt::format("{}-N80-allup", kind), collective_run(80, 80),
                   fmt::format("{} time series, left panel: all excited; N=80, gamma=1, r0=1, U=0.5", kind)});
    out.push_back({fmt::format("{}-N80-none", kind), collective_run(80, 0),
                   fmt::format("{} time series, left panel: none excited; N=80, gamma=1, r0=1, U=0.5", kind)});
    out.push_back({fmt::format("{}-N80-half", kind), collective_run(80, 39),
                   fmt::format("{} time series, right panel: N/2-1 excited; N=80, gamma=1, r0=1, U=0.5", kind)});
  }

  // Depression sweep: N = 20, U pinned at 0.5.
  const std::pair<const char*, int> states[] = {{"none", 0}, {"half", 9}, {"allup", 20}};
  const char* panels[] = {"A", "B", "C"};
  for (double tau : {0.1, 10.0, 20.0}) {
    for (std::size_t s = 0; s < 3; ++s) {
      SimulationConfig c;
      c.N = 20;
      c.lmg = {0.5, 0.8, 0.0};
      c.plasticity = {tau, 0.0, 0.5, 1.0, 0.5};
      c.initial = InitialCondition::excitations(states[s].second);
      c.t_max = 10000.0;
      out.push_back({fmt::format("fig4-tau{}-{}", tau_label(tau), states[s].first), c,
                     fmt::format("Figure 4 panel {}, tau_r={}; N=20, g0=0.5, gamma=0.8, U=0.5, r0=1", panels[s],
                                 tau_label(tau))});
    }
  }

  // Entropy statistics under increasing depression, all-excited start.
  for (double tau : {0.1, 10.0, 20.0}) {
    SimulationConfig c = out[0].config;
    c.N = 20;
    c.lmg = {0.5, 0.8, 0.0};
    c.plasticity = {tau, 0.0, 0.5, 1.0, 0.5};
    c.initial = InitialCondition::excitations(20);
    c.t_max = 10000.0;
    out.push_back({fmt::format("fig5-tau{}", tau_label(tau)), c,
                   fmt::format("Figure 5 row tau_r={}: entropy series, histogram and spectrum", tau_label(tau))});
  }

  // Facilitation: g0 rescaled per size, tau_r = 100, U_base = 0.02.
  const std::pair<int, double> sizes[] = {{2, 0.125}, {10, 1.43}, {20, 30.0}};
  const char* size_panels[] = {"A", "B", "C"};
  for (std::size_t s = 0; s < 3; ++s) {
    for (double tau_f : {1.0, 10.0, 100.0, 1000.0}) {
      SimulationConfig c;
      c.N = sizes[s].first;
      c.lmg = {sizes[s].second, 0.8, 0.0};
      c.plasticity = {100.0, tau_f, 0.02, 1.0, 0.02};
      c.initial = InitialCondition::excitations(0);
      c.t_max = 10000.0;
      out.push_back({fmt::format("fig6-N{}-tauf{}", sizes[s].first, tau_label(tau_f)), c,
                     fmt::format("Figure 6 panel {}, tau_f={}; g0={}, gamma=0.8, tau_r=100, U=0.02", size_panels[s],
                                 tau_label(tau_f), sizes[s].second)});
    }
  }
  return out;
}

std::vector<PanelReference> build_manifest() {
  std::vector<PanelReference> m;
  for (const char* g : {"1", "0.9"})
    for (int p : {100, 80, 60, 53})
      m.push_back({fmt::format("fig1-{}-{}", std::string(g) == "1" ? "A" : "B", p), fmt::format("fig1-gamma{}-p{}", g, p)});
  m.push_back({"fig2-left", "fig2-N10-half"});
  m.push_back({"fig2-right", "fig2-N80-half"});
  m.push_back({"fig3-none-left", "fig3-N10-none"});
  m.push_back({"fig3-none-right", "fig3-N80-none"});
  m.push_back({"fig3-allup-left", "fig3-N10-allup"});
  m.push_back({"fig3-allup-right", "fig3-N80-allup"});
  m.push_back({"fidelity-left", "fidelity-N80-allup"});
  m.push_back({"fidelity-right", "fidelity-N80-half"});
  m.push_back({"entropy-left", "entropy-N80-allup"});
  m.push_back({"entropy-right", "entropy-N80-half"});
  for (const char* tau : {"0.1", "10", "20"}) {
    m.push_back({fmt::format("fig4-A-tau{}", tau), fmt::format("fig4-tau{}-none", tau)});
    m.push_back({fmt::format("fig4-B-tau{}", tau), fmt::format("fig4-tau{}-half", tau)});
    m.push_back({fmt::format("fig4-C-tau{}", tau), fmt::format("fig4-tau{}-allup", tau)});
    m.push_back({fmt::format("fig5-row-tau{}", tau), fmt::format("fig5-tau{}", tau)});
  }
  for (int n : {2, 10, 20})
    for (const char* tf : {"1", "10", "100", "1000"})
      m.push_back({fmt::format("fig6-N{}-tauf{}", n, tf), fmt::format("fig6-N{}-tauf{}", n, tf)});
  return m;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> catalog = build_catalog();
  return catalog;
}

const Preset& find_preset(std::string_view name) {
  const auto& catalog = preset_catalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Preset& p) { return p.name == name; });
  if (it == catalog.end()) {
    std::string known;
    for (const auto& p : catalog) known += (known.empty() ? "" : ", ") + p.name;
    throw std::out_of_range(fmt::format("unknown preset '{}'; available: {}", name, known));
  }
  return *it;
}

SimulationConfig preset(std::string_view name) { return find_preset(name).config; }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : preset_catalog()) names.push_back(p.name);
  return names;
}

const std::vector<PanelReference>& panel_manifest() {
  static const std::vector<PanelReference> manifest = build_manifest();
  return manifest;
}

}  // namespace qbrain

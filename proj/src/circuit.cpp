#include "gcore/circuit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gcore {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("circuit file: " + where + ": " + what);
}

double get_number(const ordered_json& j, const std::string& key,
                  const std::string& where,
                  std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    fail(where, "missing field '" + key + "'");
  }
  if (!j[key].is_number()) fail(where, "field '" + key + "' must be a number");
  return j[key].get<double>();
}

cplx get_complex_pair(const ordered_json& j, const std::string& key,
                      const std::string& where) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number())
    fail(where, "field '" + key + "' must be [re, im]");
  return {j[key][0].get<double>(), j[key][1].get<double>()};
}

FockIndex get_occ(const ordered_json& j, int modes, const std::string& where) {
  if (!j.is_array()) fail(where, "'occ' must be an array of integers");
  FockIndex occ;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<int>() < 0)
      fail(where, "'occ' entries must be nonnegative integers");
    occ.push_back(e.get<int>());
  }
  if (static_cast<int>(occ.size()) != modes)
    fail(where, "'occ' length must equal the mode count");
  return occ;
}

std::vector<int> get_modes_list(const ordered_json& j, int modes, size_t count,
                                const std::string& where) {
  if (!j.contains("modes") || !j["modes"].is_array() ||
      j["modes"].size() != count)
    fail(where, "'modes' must list " + std::to_string(count) + " mode(s)");
  std::vector<int> out;
  for (const auto& e : j["modes"]) {
    if (!e.is_number_integer()) fail(where, "mode indices must be integers");
    const int v = e.get<int>();
    if (v < 0 || v >= modes) fail(where, "mode index out of range");
    out.push_back(v);
  }
  if (count == 2 && out[0] == out[1])
    fail(where, "pair gate needs two distinct modes");
  return out;
}

}  // namespace

bool Circuit::has_ladder_events() const {
  for (const auto& op : ops)
    if (std::holds_alternative<LadderEvent>(op)) return true;
  return false;
}

std::vector<int> Circuit::measured_or_all() const {
  if (measured_modes) return *measured_modes;
  std::vector<int> all(static_cast<size_t>(modes));
  for (int i = 0; i < modes; ++i) all[static_cast<size_t>(i)] = i;
  return all;
}

CoreState input_core_state(const Circuit& c) {
  if (std::holds_alternative<VacuumInput>(c.input))
    return CoreState::vacuum(c.modes);
  if (const auto* f = std::get_if<FockInput>(&c.input))
    return CoreState::fock(f->occ);
  const auto& core = std::get<CoreInput>(c.input);
  CoreState st(c.modes, core.terms, /*normalize=*/false);
  if (!st.is_normalized())
    throw ValidationError(
        "circuit file: core input amplitudes are not normalized (|norm - 1| "
        "> 1e-9)");
  return st;
}

GaussianUnitary compose_gaussian(const Circuit& c) {
  GaussianUnitary g = GaussianUnitary::identity(c.modes);
  for (const auto& op : c.ops) {
    const auto* gate = std::get_if<ElementaryGate>(&op);
    if (gate == nullptr)
      throw ValidationError(
          "compose_gaussian: circuit contains photon add/sub events; compile "
          "it first");
    g = compose(GaussianUnitary::from_gate(*gate, c.modes), g);
  }
  return g;
}

Circuit parse_circuit(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("circuit file: JSON parse error: ") +
                          e.what());
  }
  if (!doc.is_object()) fail("top level", "document must be an object");
  if (!doc.contains("modes") || !doc["modes"].is_number_integer() ||
      doc["modes"].get<int>() < 1)
    fail("top level", "'modes' must be a positive integer");

  Circuit c;
  c.modes = doc["modes"].get<int>();

  if (!doc.contains("input") || !doc["input"].is_object())
    fail("input", "missing input object");
  const auto& in = doc["input"];
  const std::string type = in.value("type", "");
  if (type == "vacuum") {
    c.input = VacuumInput{};
  } else if (type == "fock") {
    if (!in.contains("occ")) fail("input", "fock input needs 'occ'");
    c.input = FockInput{get_occ(in["occ"], c.modes, "input.occ")};
  } else if (type == "core") {
    if (!in.contains("terms") || !in["terms"].is_array() ||
        in["terms"].empty())
      fail("input", "core input needs a nonempty 'terms' array");
    CoreInput core;
    size_t idx = 0;
    for (const auto& t : in["terms"]) {
      const std::string where = "input.terms[" + std::to_string(idx++) + "]";
      if (!t.is_object() || !t.contains("occ")) fail(where, "needs 'occ'");
      core.terms.emplace_back(get_occ(t["occ"], c.modes, where),
                              get_complex_pair(t, "amp", where));
    }
    c.input = std::move(core);
  } else {
    fail("input", "unknown input type '" + type + "'");
  }

  if (doc.contains("gates")) {
    if (!doc["gates"].is_array()) fail("gates", "must be an array");
    size_t idx = 0;
    for (const auto& g : doc["gates"]) {
      const std::string where = "gates[" + std::to_string(idx++) + "]";
      if (!g.is_object()) fail(where, "must be an object");
      const std::string name = g.value("g", "");
      if (name == "disp") {
        const auto ms = get_modes_list(g, c.modes, 1, where);
        c.ops.emplace_back(
            displacement(get_complex_pair(g, "beta", where), ms[0]));
      } else if (name == "rot") {
        const auto ms = get_modes_list(g, c.modes, 1, where);
        c.ops.emplace_back(rotation(get_number(g, "phi", where), ms[0]));
      } else if (name == "sqz") {
        const auto ms = get_modes_list(g, c.modes, 1, where);
        c.ops.emplace_back(squeeze(get_number(g, "r", where),
                                   get_number(g, "theta", where, 0.0), ms[0]));
      } else if (name == "bs") {
        const auto ms = get_modes_list(g, c.modes, 2, where);
        c.ops.emplace_back(beamsplitter(get_number(g, "theta", where),
                                        get_number(g, "phi", where, 0.0),
                                        ms[0], ms[1]));
      } else if (name == "tms") {
        const auto ms = get_modes_list(g, c.modes, 2, where);
        c.ops.emplace_back(two_mode_squeeze(get_number(g, "r", where),
                                            get_number(g, "theta", where, 0.0),
                                            ms[0], ms[1]));
      } else if (name == "swap") {
        const auto ms = get_modes_list(g, c.modes, 2, where);
        c.ops.emplace_back(mode_swap(ms[0], ms[1]));
      } else if (name == "add" || name == "sub") {
        const auto ms = get_modes_list(g, c.modes, 1, where);
        c.ops.emplace_back(LadderEvent{name == "add"
                                           ? LadderEvent::Kind::Addition
                                           : LadderEvent::Kind::Subtraction,
                                       ms[0]});
      } else {
        fail(where, "unknown gate '" + name + "'");
      }
    }
  }

  if (doc.contains("measurement")) {
    const auto& meas = doc["measurement"];
    if (!meas.is_object() || !meas.contains("measured_modes") ||
        !meas["measured_modes"].is_array() || meas["measured_modes"].empty())
      fail("measurement", "needs a nonempty 'measured_modes' array");
    std::vector<int> mm;
    std::vector<char> seen(static_cast<size_t>(c.modes), 0);
    for (const auto& e : meas["measured_modes"]) {
      if (!e.is_number_integer()) fail("measurement", "mode must be integer");
      const int v = e.get<int>();
      if (v < 0 || v >= c.modes) fail("measurement", "mode index out of range");
      if (seen[static_cast<size_t>(v)]) fail("measurement", "duplicate mode");
      seen[static_cast<size_t>(v)] = 1;
      mm.push_back(v);
    }
    c.measured_modes = std::move(mm);
  }
  return c;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

std::string emit_circuit(const Circuit& c) {
  ordered_json doc;
  doc["modes"] = c.modes;

  if (std::holds_alternative<VacuumInput>(c.input)) {
    doc["input"] = {{"type", "vacuum"}};
  } else if (const auto* f = std::get_if<FockInput>(&c.input)) {
    doc["input"] = {{"type", "fock"}, {"occ", f->occ}};
  } else {
    const auto& core = std::get<CoreInput>(c.input);
    ordered_json terms = ordered_json::array();
    for (const auto& [occ, amp] : core.terms)
      terms.push_back({{"occ", occ},
                       {"amp", {amp.real(), amp.imag()}}});
    doc["input"] = {{"type", "core"}, {"terms", std::move(terms)}};
  }

  ordered_json gates = ordered_json::array();
  for (const auto& op : c.ops) {
    if (const auto* ev = std::get_if<LadderEvent>(&op)) {
      gates.push_back(
          {{"g", ev->kind == LadderEvent::Kind::Addition ? "add" : "sub"},
           {"modes", {ev->mode}}});
      continue;
    }
    const auto& g = std::get<ElementaryGate>(op);
    switch (g.kind) {
      case GateKind::Displacement:
        gates.push_back({{"g", "disp"},
                         {"modes", {g.mode_a}},
                         {"beta", {g.amplitude.real(), g.amplitude.imag()}}});
        break;
      case GateKind::Rotation:
        gates.push_back({{"g", "rot"}, {"modes", {g.mode_a}}, {"phi", g.angle_a}});
        break;
      case GateKind::Squeeze:
        gates.push_back({{"g", "sqz"},
                         {"modes", {g.mode_a}},
                         {"r", std::abs(g.amplitude)},
                         {"theta", std::arg(g.amplitude)}});
        break;
      case GateKind::Beamsplitter:
        gates.push_back({{"g", "bs"},
                         {"modes", {g.mode_a, g.mode_b}},
                         {"theta", g.angle_a},
                         {"phi", g.angle_b}});
        break;
      case GateKind::TwoModeSqueeze:
        gates.push_back({{"g", "tms"},
                         {"modes", {g.mode_a, g.mode_b}},
                         {"r", std::abs(g.amplitude)},
                         {"theta", std::arg(g.amplitude)}});
        break;
      case GateKind::ModeSwap:
        gates.push_back({{"g", "swap"}, {"modes", {g.mode_a, g.mode_b}}});
        break;
    }
  }
  doc["gates"] = std::move(gates);
  if (c.measured_modes)
    doc["measurement"] = {{"measured_modes", *c.measured_modes}};
  return doc.dump(2) + "\n";
}

OutcomeVector parse_outcome(const std::string& text, int expected) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != expected)
    throw ValidationError("outcome: expected " + std::to_string(expected) +
                          " comma-separated complex values, got " +
                          std::to_string(parts.size()));

  // Parses an optionally signed double; from_chars itself rejects '+'.
  const auto parse_signed = [](const char* b, const char* e,
                               double& v) -> const char* {
    bool neg = false;
    if (b != e && (*b == '+' || *b == '-')) {
      neg = (*b == '-');
      ++b;
    }
    if (b == e || (*b != '.' && !(*b >= '0' && *b <= '9'))) return nullptr;
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc()) return nullptr;
    if (neg) v = -v;
    return r.ptr;
  };

  OutcomeVector out;
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string& s = parts[i];
    const std::string where = "outcome entry " + std::to_string(i + 1);
    const char* end = s.data() + s.size();
    double re = 0.0, im = 0.0;
    const char* p = parse_signed(s.data(), end, re);
    if (p == nullptr)
      throw ValidationError(where + ": cannot parse real part of '" + s +
                            "' (format a+bi)");
    if (p == end || (*p != '+' && *p != '-'))
      throw ValidationError(where + ": expected signed imaginary part in '" +
                            s + "' (format a+bi)");
    p = parse_signed(p, end, im);
    if (p == nullptr)
      throw ValidationError(where + ": cannot parse imaginary part of '" + s +
                            "'");
    if (p == end || *p != 'i' || p + 1 != end)
      throw ValidationError(where + ": expected trailing 'i' in '" + s + "'");
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ValidationError(where + ": non-finite value");
    out.emplace_back(re, im);
  }
  return out;
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace gcore

#include "sptsim/state.hpp"

#include <cstdio>
#include <cstdlib>

namespace sptsim {

std::string SublatticeState::to_snapshot() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, ";t=%.17g", time);
  return "L=" + std::to_string(L) + ";d=" + d.to_hex() + ";e=" + e.to_hex() + buf;
}

SublatticeState SublatticeState::from_snapshot(const std::string& s) {
  auto field = [&](const std::string& key) -> std::string {
    auto pos = s.find(key + "=");
    if (pos == std::string::npos) throw std::invalid_argument("snapshot missing field " + key);
    pos += key.size() + 1;
    auto end = s.find(';', pos);
    return s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
  };
  SublatticeState st;
  st.L = std::stoi(field("L"));
  st.d = BitVec::from_hex(field("d"), st.L);
  st.e = BitVec::from_hex(field("e"), st.L);
  st.time = std::strtod(field("t").c_str(), nullptr);
  return st;
}

SublatticeState init_state(const SimParams& params, RngStream& rng) {
  params.validate();
  SublatticeState st;
  st.L = params.L;
  st.d = BitVec(params.L);
  st.e = BitVec(params.L);
  st.time = 0.0;

  switch (params.initial) {
    case InitialState::Cluster:
      break;
    case InitialState::RandomEvenParity: {
      for (int m = 0; m < params.L; ++m)
        if (rng.next_u64() >> 63) st.d.set(m);
      // Deterministic parity repair: flip site 0 if the coin flips came out odd.
      if (st.d.parity() != 0) st.d.flip(0);
      break;
    }
    case InitialState::AllErased:
      st.e.fill(true);
      break;
  }
  return st;
}

int region_parity(const SublatticeState& s, int i, int l, Boundary boundary) {
  if (l < 1 || l > s.L) throw std::invalid_argument("region_parity: l out of range");
  if (i < 0 || i >= s.L) throw std::invalid_argument("region_parity: i out of range");
  if (boundary == Boundary::ChiralOpen && i + l > s.L)
    throw std::invalid_argument("region_parity: window exceeds open chain");
  int par = 0;
  for (int k = 0; k < l; ++k) {
    int idx = i + k;
    if (idx >= s.L) idx -= s.L;
    par ^= s.d.get(idx);
  }
  return par ? -1 : +1;
}

}  // namespace sptsim

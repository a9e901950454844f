#pragma once

#include <map>
#include <mutex>
#include <string>

#include "doctest.h"
#include "drinfeld/log_extension.hpp"
#include "drinfeld/motive.hpp"
#include "drinfeld/suite.hpp"

namespace test {

using namespace drinfeld;

inline FieldPtr make_field(uint32_t p, uint32_t m, int64_t e, int depth = 2) {
  FieldConfig c;
  c.p = p;
  c.m = m;
  c.e = e;
  c.depth = depth;
  return Field::make(c);
}

inline CInf th(const FieldPtr& f, int64_t k) { return CInf::theta_pow(f, k); }

/// Sample module on its automatically chosen field, built once per process.
inline const DrinfeldModule& sample(const std::string& name, uint32_t q) {
  static std::mutex mu;
  static std::map<std::string, DrinfeldModule> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::string key = name + "/" + std::to_string(q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const ModuleRecipe r = sample_recipe(name, q);
  const FieldChoice fc = choose_field(r, Precision{});
  return cache.emplace(key, build_module(r, Field::make(fc.config))).first->second;
}

/// Oriented period basis, Omega and the rank 2 system Psi of a sample module.
struct Motive {
  DrinfeldModule rho;
  Precision prec;
  OmegaSeries om;
  CInf omega_theta;
  std::vector<CInf> basis;
  PsiSystem sys;
};

inline const Motive& motive(const std::string& name, uint32_t q, size_t T = 8) {
  static std::mutex mu;
  static std::map<std::string, Motive> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::string key = name + "/" + std::to_string(q) + "/" + std::to_string(T);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Motive m;
  m.rho = sample(name, q);
  const FieldPtr& f = m.rho.field();
  m.om = omega_series(f, m.prec.t_terms, m.prec.working(*f) + 2 * f->e());
  m.omega_theta = omega_at_theta(m.om);
  const Lattice L = periods(m.rho, m.prec);
  m.basis = orient_basis(m.rho, {L.omega(0), L.omega(1)}, m.omega_theta, m.prec);
  m.sys = psi_matrix(m.rho, m.basis, m.prec, T);
  return cache.emplace(key, std::move(m)).first->second;
}

inline bool zero_to(const CInf& x, int64_t level) { return x.horizon() >= level; }

}  // namespace test

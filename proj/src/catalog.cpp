#include "a3pi/catalog.hpp"

#include "a3pi/derivations.hpp"
#include "a3pi/errors.hpp"
#include "a3pi/spheres.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace a3pi::catalog {

namespace {

CanonicalGroup Z(Exp e) { return CanonicalGroup::cyclic(e); }
CanonicalGroup free1() { return CanonicalGroup::free(1); }
CanonicalGroup sum(std::initializer_list<CanonicalGroup> parts) { return direct_sum(parts); }

std::string exp_text(Exp e) { return e.to_string(); }

void check_param(Exp e, const char* name, bool allow_inf, std::uint64_t cap) {
  if (e.is_infinite()) {
    if (!allow_inf) throw InvalidArgument(std::string(name) + " must be finite for this family");
    return;
  }
  if (e.value() < 1 || e.value() > cap)
    throw InvalidArgument(std::string(name) + " must lie in 1.." + std::to_string(cap));
}

// pi_{n+k}(S^n), written out from the standard 2-local table.
CanonicalGroup sphere_closed_form(int n, int m) {
  const int k = m - n;
  if (k < 0) return CanonicalGroup::trivial();
  switch (k) {
    case 0: return free1();
    case 1: return n == 2 ? free1() : Z(1);
    case 2: return Z(1);
    case 3:
      if (n == 3) return Z(2);
      if (n == 4) return sum({free1(), Z(2)});
      if (n >= 5) return Z(3);
      break;
    case 4:
      if (n == 3) return Z(1);
      if (n == 4) return sum({Z(1), Z(1)});
      if (n == 5) return Z(1);
      if (n >= 6) return CanonicalGroup::trivial();
      break;
    default: break;
  }
  throw OutOfRange("π_" + std::to_string(m) + "(S^" + std::to_string(n) + ") is outside the catalog");
}

}  // namespace

std::string ComplexSpec::name() const {
  switch (kind) {
    case Kind::Sphere: return "S^" + std::to_string(n_sphere);
    case Kind::Moore: return "M^" + std::to_string(moore_k) + "(r=" + exp_text(r) + ")";
    case Kind::ChangEta: return "C_eta";
    case Kind::ChangCr: return "C_r(r=" + exp_text(r) + ")";
    case Kind::ChangCs: return "C^s(s=" + exp_text(s) + ")";
    case Kind::ChangCrs: return "C_r^s(r=" + exp_text(r) + ",s=" + exp_text(s) + ")";
  }
  return "?";
}

void validate(const ComplexSpec& spec, int n, std::uint64_t cap) {
  if (n != 6 && n != 7) throw InvalidArgument("only degrees 6 and 7 are catalogued");
  switch (spec.kind) {
    case Kind::Sphere:
      if (spec.n_sphere < 3 || spec.n_sphere > 8) throw InvalidArgument("sphere dimension must lie in 3..8");
      break;
    case Kind::Moore:
      if (spec.moore_k != 3 && spec.moore_k != 4) throw InvalidArgument("Moore spaces M^3 and M^4 only");
      check_param(spec.r, "r", false, cap);
      if (spec.moore_k == 4 && n != 7) throw InvalidArgument("M^4 is catalogued in degree 7 only");
      break;
    case Kind::ChangEta:
      break;
    case Kind::ChangCr:
      check_param(spec.r, "r", false, cap);
      break;
    case Kind::ChangCs:
      check_param(spec.s, "s", false, cap);
      break;
    case Kind::ChangCrs:
      check_param(spec.r, "r", true, cap);
      check_param(spec.s, "s", true, cap);
      if (spec.r.is_infinite() && spec.s.is_infinite()) throw InvalidArgument("r and s cannot both be infinite");
      break;
  }
}

CanonicalGroup closed_form(const ComplexSpec& spec, int n) {
  validate(spec, n);
  const Exp r = spec.r, s = spec.s;
  const int e = epsilon(r);
  const CanonicalGroup odd_r = e ? CanonicalGroup::trivial() : Z(1);  // (1 - ε_r)Z₂
  switch (spec.kind) {
    case Kind::Sphere:
      return sphere_closed_form(spec.n_sphere, n);
    case Kind::Moore:
      if (spec.moore_k == 3 && n == 6) {
        if (r == Exp(1)) return sum({Z(2), Z(1)});
        if (r == Exp(2)) return sum({Z(3), Z(1), Z(1)});
        return sum({Z(2), Z(1), Z(r)});
      }
      if (spec.moore_k == 3) return sum({Z(1), Z(1), e ? CanonicalGroup::trivial() : Z(2)});
      return sum({Z(min(Exp(2), r.minus(1))), Z(r + Exp(1)), Z(1)});
    case Kind::ChangEta:
      return n == 6 ? Z(1) : free1();
    case Kind::ChangCr:
      if (n == 6) return sum({Z(1), odd_r, Z(r + Exp(e))});
      return sum({Z(2), Z(r + Exp(1))});
    case Kind::ChangCs:
      if (n == 6) return sum({Z(1), Z(1), Z(s)});
      return sum({Z(min(s, Exp(2))), Z(s + Exp(2))});
    case Kind::ChangCrs:
      if (n == 6) return sum({Z(1), Z(1), odd_r, Z(min(r, s)), Z(r + Exp(e))});
      if (r.is_infinite()) return sum({Z(min(s, Exp(2))), Z(s + Exp(1)), Z(s + Exp(2)), Z(2), free1()});
      return sum({Z(min(s.minus(static_cast<std::uint64_t>(e)), Exp(2))), Z(min(s + Exp(1), r + Exp(1))),
                  Z(s + Exp(2)), Z(2)});
  }
  throw InvalidArgument("unknown family");
}

// pi_6(C_r^8) = Z_{2^r} from the bottom cell, pi_7(C_r^8) = 0.
CanonicalGroup cross_term_cr(Exp r, int n) { return n == 6 ? Z(r) : CanonicalGroup::trivial(); }

// pi_6(C^{8,s}) = Z_(2), pi_7(C^{8,s}) = Z_{2^{s+1}}.
CanonicalGroup cross_term_cs(Exp s, int n) { return n == 6 ? free1() : Z(s + Exp(1)); }

CanonicalGroup compute(const ComplexSpec& spec, int n, const les::Options& options) {
  validate(spec, n);
  switch (spec.kind) {
    case Kind::Sphere:
      return spheres::pi_sphere(spec.n_sphere, n).group();
    case Kind::ChangEta:
      // Mukai's values for the complex projective plane's suspension, 2-locally.
      return n == 6 ? Z(1) : free1();
    case Kind::Moore:
      return les::compute_pi(spec.moore_k == 3 ? les::Family::m3() : les::Family::m4(), {spec.r, Exp::infinity()}, n,
                             options);
    case Kind::ChangCrs:
      return les::compute_pi(les::Family::chang(1), {spec.r, spec.s}, n, options);
    case Kind::ChangCr: {
      // C_{r,1}^{5,∞} = C_r^5 v S^4, whose pi_n also carries pi_n(C_r^8).
      const auto whole = les::compute_pi(les::Family::chang(1), {spec.r, Exp::infinity()}, n, options);
      return cancel_summand(cancel_summand(whole, spheres::pi_sphere(4, n).group()), cross_term_cr(spec.r, n));
    }
    case Kind::ChangCs: {
      const auto whole = les::compute_pi(les::Family::chang(1), {Exp::infinity(), spec.s}, n, options);
      return cancel_summand(cancel_summand(whole, spheres::pi_sphere(4, n).group()), cross_term_cs(spec.s, n));
    }
  }
  throw InvalidArgument("unknown family");
}

bool VerifyReport::ok() const { return count(Status::Fail) == 0; }

std::size_t VerifyReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [&](const VerifyCell& c) { return c.status == s; }));
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "?";
}

namespace {

std::vector<std::pair<ComplexSpec, int>> sweep_cells(const std::vector<Exp>& rs, const std::vector<Exp>& ss,
                                                     const std::vector<int>& dims) {
  std::vector<std::pair<ComplexSpec, int>> cells;
  if (rs.empty() && ss.empty()) return cells;
  for (int n : dims) {
    for (int k : {3, 4, 5}) cells.emplace_back(ComplexSpec::sphere(k), n);
    cells.emplace_back(ComplexSpec::chang_eta(), n);
    for (const auto& r : rs) {
      cells.emplace_back(ComplexSpec::moore(3, r), n);
      cells.emplace_back(ComplexSpec::moore(4, r), n);
      cells.emplace_back(ComplexSpec::chang_cr(r), n);
    }
    for (const auto& s : ss) cells.emplace_back(ComplexSpec::chang_cs(s), n);
    for (const auto& r : rs)
      for (const auto& s : ss) cells.emplace_back(ComplexSpec::chang_crs(r, s), n);
  }
  return cells;
}

VerifyCell evaluate(const ComplexSpec& spec, int n, const les::Options& options) {
  VerifyCell cell{spec, n, Status::Skip, std::nullopt, std::nullopt, ""};
  try {
    validate(spec, n);
  } catch (const InvalidArgument& e) {
    cell.note = e.what();
    return cell;
  }
  try {
    cell.expected = closed_form(spec, n);
    cell.computed = compute(spec, n, options);
    cell.status = *cell.computed == *cell.expected ? Status::Pass : Status::Fail;
  } catch (const Error& e) {
    cell.status = Status::Fail;
    cell.note = e.what();
  }
  return cell;
}

}  // namespace

VerifyReport verify_sweep(const std::vector<Exp>& r_values, const std::vector<Exp>& s_values,
                          const std::vector<int>& dims, const les::Options& options, unsigned threads) {
  derivations::resolve_signs();
  const auto cells = sweep_cells(r_values, s_values, dims);
  VerifyReport report;
  report.cells.resize(cells.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      report.cells[i] = evaluate(cells[i].first, cells[i].second, options);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return report;
}

}  // namespace a3pi::catalog

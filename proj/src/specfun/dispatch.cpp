#include <charconv>
#include <cmath>
#include <string>

#include "jladder/error.hpp"
#include "jladder/specfun.hpp"

namespace jladder {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::string format_k(double k) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), k);
  return std::string(buf, res.ptr);
}

}  // namespace

FunctionId parse_function(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw Error(ErrorKind::InvalidArgument, "function '" + head + "' needs a parameter");
  };
  FunctionId f;
  if (head == "zeta") {
    f = fn::Zeta{};
  } else if (head == "cos") {
    f = fn::Cos{};
  } else if (head == "power") {
    need_arg();
    f = fn::Power{parse_number<int>(arg, "power exponent")};
  } else if (head == "rgamma") {
    f = fn::ReciprocalGamma{};
  } else if (head == "bessel") {
    need_arg();
    f = fn::BesselJ{parse_number<int>(arg, "Bessel order")};
  } else if (head == "sn") {
    need_arg();
    f = fn::JacobiSN{parse_number<double>(arg, "modulus")};
  } else if (head == "cn") {
    need_arg();
    f = fn::JacobiCN{parse_number<double>(arg, "modulus")};
  } else if (head == "dn") {
    need_arg();
    f = fn::JacobiDN{parse_number<double>(arg, "modulus")};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown function '" + text + "'");
  }
  validate(f);
  return f;
}

std::string function_name(const FunctionId& f) {
  return std::visit(overloaded{
                        [](fn::Zeta) { return std::string("zeta"); },
                        [](fn::Cos) { return std::string("cos"); },
                        [](fn::Power p) { return "power:" + std::to_string(p.n); },
                        [](fn::ReciprocalGamma) { return std::string("rgamma"); },
                        [](fn::BesselJ b) { return "bessel:" + std::to_string(b.p); },
                        [](fn::JacobiSN e) { return "sn:" + format_k(e.k); },
                        [](fn::JacobiCN e) { return "cn:" + format_k(e.k); },
                        [](fn::JacobiDN e) { return "dn:" + format_k(e.k); },
                    },
                    f);
}

void validate(const FunctionId& f) {
  auto check_k = [](double k) {
    if (!(k * k > 0.0 && k * k < 1.0)) {
      throw Error(ErrorKind::ModulusOutOfRange, "elliptic modulus needs k^2 in (0,1)");
    }
  };
  std::visit(overloaded{
                 [](fn::Power p) {
                   if (p.n < 1) throw Error(ErrorKind::InvalidArgument, "power exponent must be >= 1");
                 },
                 [&](fn::JacobiSN e) { check_k(e.k); },
                 [&](fn::JacobiCN e) { check_k(e.k); },
                 [&](fn::JacobiDN e) { check_k(e.k); },
                 [](auto) {},
             },
             f);
}

Complex eval(const FunctionId& f, Complex s, const EvalOptions& opts) {
  return std::visit(overloaded{
                        [&](fn::Zeta) { return zeta(s, opts); },
                        [&](fn::Cos) { return std::cos(s); },
                        [&](fn::Power p) {
                          Complex r{1.0, 0.0};
                          for (int i = 0; i < p.n; ++i) r *= s;
                          return r;
                        },
                        [&](fn::ReciprocalGamma) { return reciprocal_gamma(s); },
                        [&](fn::BesselJ b) { return bessel_j(b.p, s); },
                        [&](fn::JacobiSN e) { return jacobi_elliptic(s, e.k).sn; },
                        [&](fn::JacobiCN e) { return jacobi_elliptic(s, e.k).cn; },
                        [&](fn::JacobiDN e) { return jacobi_elliptic(s, e.k).dn; },
                    },
                    f);
}

double eval_modulus(const FunctionId& f, Complex s, const EvalOptions& opts) {
  if (const auto* p = std::get_if<fn::Power>(&f)) return std::pow(std::abs(s), p->n);
  return std::abs(eval(f, s, opts));
}

}  // namespace jladder

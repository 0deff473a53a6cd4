// entanglement.cpp
#include "pagecurve/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pagecurve/errors.hpp"

namespace pagecurve {

std::vector<double> parse_renyi_orders(const std::string& text) {
  std::vector<double> orders;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (item == "inf" || item == "min" || item == "infinity") {
      orders.push_back(kInfiniteOrder);
      continue;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("renyi", "not a number: '" + item + "'");
    }
    if (used != item.size() || !(value > 0.0))
      throw ValidationError("renyi", "orders must be positive numbers or inf: '" + item + "'");
    orders.push_back(value);
  }
  if (orders.empty()) throw ValidationError("renyi", "empty order list");
  return orders;
}

std::vector<double> extra_renyi_orders(std::span<const double> orders) {
  std::vector<double> extra;
  for (double n : orders) {
    if (n == 1.0 || std::isinf(n)) continue;
    if (std::find(extra.begin(), extra.end(), n) == extra.end()) extra.push_back(n);
  }
  return extra;
}

EntropyValues entropies_from_spectrum(std::span<const double> lambdas,
                                      std::span<const double> orders) {
  EntropyValues out;
  double largest = 0.0;
  for (double p : lambdas) {
    if (p > 0.0) out.von_neumann -= p * std::log(p);
    largest = std::max(largest, p);
  }
  out.min_entropy = largest > 0.0 ? -std::log(largest) : kInfiniteOrder;
  out.renyi.reserve(orders.size());
  for (double n : orders) {
    if (n == 1.0) {
      out.renyi.push_back(out.von_neumann);
    } else if (std::isinf(n)) {
      out.renyi.push_back(out.min_entropy);
    } else {
      double sum = 0.0;
      for (double p : lambdas)
        if (p > 0.0) sum += std::pow(p, n);
      out.renyi.push_back(std::log(sum) / (1.0 - n));
    }
  }
  return out;
}

SchmidtLevel make_level(double lambda, int sector) {
  SchmidtLevel level;
  level.lambda = lambda;
  level.energy = lambda > 0.0 ? -std::log(lambda) : kInfiniteOrder;
  level.sector = sector;
  return level;
}

std::string renyi_label(double order) {
  if (std::isinf(order)) return "S_min";
  if (order == 1.0) return "S_vN";
  char buf[64];
  std::snprintf(buf, sizeof buf, "S_%g", order);
  return buf;
}

}  // namespace pagecurve

#include "slidegraph/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace slidegraph {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

HashingEmbedder::HashingEmbedder(int dim) : dim_(dim) {
  if (dim < 1) throw ArgumentError("embedding dimension must be positive");
}

Vector HashingEmbedder::embed(std::string_view text) const {
  Vector v = Vector::Zero(dim_);
  std::string token;
  bool any_token = false;
  auto flush = [&] {
    if (token.empty()) return;
    const std::uint64_t h = fnv1a64(token);
    const auto bucket = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(dim_));
    v[bucket] += (h >> 63) ? -1.0 : 1.0;
    any_token = true;
    token.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      token.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  const double norm = v.norm();
  if (!any_token || norm == 0.0) {
    // empty text, or tokens whose signed counts cancel exactly
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / norm;
}

double cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ArgumentError("cosine: dimension mismatch");
  const double d = a.dot(b);
  return std::clamp(d, -1.0, 1.0);
}

}  // namespace slidegraph

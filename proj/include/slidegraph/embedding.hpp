#pragma once

#include <cstdint>
#include <string_view>

#include "slidegraph/types.hpp"

namespace slidegraph {

/// Text-to-unit-vector contract. The bundled provider is deterministic and
/// platform independent; external providers may plug in behind the same
/// interface.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dim() const = 0;
  virtual Vector embed(std::string_view text) const = 0;
};

/// FNV-1a 64-bit with the standard offset basis and prime.
std::uint64_t fnv1a64(std::string_view bytes);

/// Signed hashing bag-of-words embedder: lowercase alphanumeric tokens are
/// hashed into `dim` buckets, one hash bit picks the sign, counts accumulate,
/// and the vector is L2-normalized. Empty or whitespace-only text maps to the
/// first basis vector e0.
class HashingEmbedder final : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(int dim = 256);
  int dim() const override { return dim_; }
  Vector embed(std::string_view text) const override;

 private:
  int dim_;
};

/// Cosine similarity of two unit vectors, clamped to [-1, 1].
double cosine(const Vector& a, const Vector& b);

}  // namespace slidegraph

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slidegraph/features.hpp"
#include "slidegraph/rng.hpp"
#include "slidegraph/spatial_graph.hpp"
#include "slidegraph/types.hpp"

namespace slidegraph {

struct ModelConfig {
  int in_dim = kFeatureDim;
  int gcn_hidden = 128;
  int gat_heads = 4;
  int gat_head_dim = 32;  // gat_heads * gat_head_dim must equal gcn_hidden
  int gat2_out = 64;
  int head_hidden = 64;
  int n_classes = 3;
  double leaky_relu_slope = 0.2;
  double dropout_rate = 0.0;

  void validate() const;
};

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  std::uint64_t seed = 7;
  int patience = 0;  // early-stop patience in epochs; 0 disables

  void validate() const;
};

/// Message-passing view of a proximity graph: the symmetric-normalized
/// adjacency with self-loops for GCN, and per-node neighborhoods including
/// self for attention.
struct GraphContext {
  int n = 0;
  SparseMatrix norm_adj;
  std::vector<std::vector<int>> nbrs;  // N(i) ∪ {i}, ascending
};

GraphContext make_graph_context(const ProximityGraph& g);
GraphContext make_graph_context(int n, const std::vector<std::pair<int, int>>& undirected_edges);

struct GatHeadParams {
  Matrix weight;    // in x head_dim
  Vector attn_src;  // head_dim
  Vector attn_dst;  // head_dim
};

struct GatLayerParams {
  std::vector<GatHeadParams> heads;
};

struct DenseParams {
  Matrix weight;
  Vector bias;
};

struct ModelParams {
  DenseParams gcn;       // in_dim -> gcn_hidden
  GatLayerParams gat1;   // gcn_hidden -> gat_heads * gat_head_dim
  GatLayerParams gat2;   // gcn_hidden -> gat2_out, single head
  DenseParams hidden;    // gat2_out -> head_hidden
  DenseParams out;       // head_hidden -> n_classes
};

/// Glorot-uniform initialization, deterministic for a fixed seed.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);
ModelParams zeros_like(const ModelConfig& config);

/// Row-major flattening in a fixed layer order; inverse of unflatten.
std::vector<double> flatten(const ModelParams& params);
ModelParams unflatten(const ModelConfig& config, const std::vector<double>& flat);

struct ParamBreakdown {
  std::size_t gcn = 0;
  std::size_t gat1 = 0;
  std::size_t gat2 = 0;
  std::size_t hidden = 0;
  std::size_t out = 0;
  std::size_t total = 0;
};

ParamBreakdown param_count_breakdown(const ModelConfig& config);
std::size_t param_count(const ModelConfig& config);

/// ReLU( norm_adj · X · W + b ), row-broadcast bias.
Matrix gcn_forward(const Matrix& X, const GraphContext& ctx, const Matrix& W, const Vector& b);

/// Single-layer neighborhood attention with LeakyReLU logits and ELU output;
/// heads are concatenated.
Matrix gat_forward(const Matrix& H, const GraphContext& ctx, const GatLayerParams& layer,
                   double leaky_slope);

/// Attention rows for one head, aligned with ctx.nbrs (each row sums to 1).
std::vector<std::vector<double>> gat_head_attention(const Matrix& H, const GraphContext& ctx,
                                                    const GatHeadParams& head,
                                                    double leaky_slope);

Matrix softmax_rows(const Matrix& logits);

struct ForwardResult {
  Matrix logits;         // n x n_classes
  Matrix probabilities;  // row-softmax of logits
};

ForwardResult model_forward(const ModelConfig& config, const ModelParams& params,
                            const Matrix& X, const GraphContext& ctx);

struct LossAndGrads {
  double loss = 0.0;
  ModelParams grads;
};

/// Mean cross-entropy over `mask` plus reverse-mode gradients for every
/// parameter. Dropout (when configured and an rng is supplied) uses inverted
/// scaling so evaluation needs no correction.
LossAndGrads loss_and_grads(const ModelConfig& config, const ModelParams& params,
                            const Matrix& X, const GraphContext& ctx,
                            const std::vector<int>& labels, const std::vector<int>& mask,
                            SplitMix64* dropout_rng = nullptr);

std::vector<int> predict_classes(const Matrix& probabilities);

struct Metrics {
  double macro_f1 = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  std::array<double, 3> precision{};
  std::array<double, 3> recall{};
  std::array<double, 3> f1{};
  std::array<std::array<std::int64_t, 3>, 3> confusion{};  // [truth][prediction]
  std::vector<std::string> diagnostics;  // classes absent from both sides
};

Metrics evaluate(const std::vector<int>& predictions, const std::vector<int>& labels);

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_macro_f1 = 0.0;
};

struct TrainResult {
  ModelParams params;  // parameters at the best validation macro-F1
  std::vector<EpochStats> history;
  int best_epoch = 0;
  double best_val_f1 = 0.0;
};

/// Full-batch gradient descent with weight decay; deterministic for a fixed
/// seed. Raises TrainingError naming the epoch if the loss turns non-finite.
TrainResult train(const ModelConfig& config, const TrainConfig& train_config, const Matrix& X,
                  const GraphContext& ctx, const std::vector<int>& labels,
                  const DatasetSplit& splits);

void write_history_csv(const std::vector<EpochStats>& history, std::ostream& out);

std::string checkpoint_to_json(const ModelConfig& config, const ModelParams& params);
std::pair<ModelConfig, ModelParams> checkpoint_from_json(const std::string& text);
void save_checkpoint(const std::string& path, const ModelConfig& config,
                     const ModelParams& params);
std::pair<ModelConfig, ModelParams> load_checkpoint(const std::string& path);

}  // namespace slidegraph

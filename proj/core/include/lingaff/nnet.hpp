#pragma once

// Feed-forward classifier trained from scratch: two ReLU hidden layers of
// width 4K (K = number of families), class-weighted cross-entropy, Adam,
// early stopping on monitor balanced accuracy with best-checkpoint
// restoration.
//
// Training runs in single precision; the same code instantiates with double
// for gradient verification.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "lingaff/encode.hpp"
#include "lingaff/matrix.hpp"

namespace lingaff {

template <typename T>
struct MlpParams {
    Mat<T> w1;          // in x h
    std::vector<T> b1;  // h
    Mat<T> w2;          // h x h
    std::vector<T> b2;  // h
    Mat<T> w3;          // h x K
    std::vector<T> b3;  // K

    bool operator==(const MlpParams&) const = default;

    int input_width() const { return w1.rows(); }
    int hidden_width() const { return w1.cols(); }
    int num_classes() const { return w3.cols(); }
};

template <typename T>
struct AdamState {
    MlpParams<T> m;
    MlpParams<T> v;
    long t = 0;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    int batch_size = 2048;
    int max_epochs = 5000;
    int patience = 500;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
};

/// w_c = N / (K * n_c) over the training targets; classes with no training
/// members get weight zero.
std::vector<float> class_weights(std::span<const int> targets, int num_classes);

/// Hidden width is 4K. Weights are uniform in [-sqrt(6/fan_in),
/// +sqrt(6/fan_in)] per layer, biases zero, fully determined by the seed.
template <typename T>
MlpParams<T> init_params(std::uint64_t seed, int input_width, int num_classes);

/// logits = relu(relu(X*w1 + b1)*w2 + b2)*w3 + b3
template <typename T>
Mat<T> forward(const MlpParams<T>& params, const Mat<T>& x);

template <typename T>
struct LossResult {
    double loss = 0.0;
    Mat<T> dlogits;
};

/// Weighted-mean cross-entropy over a batch:
///   loss = sum_i w[y_i] * (-log softmax(logits_i)[y_i]) / sum_i w[y_i]
/// computed in log-sum-exp form, with the gradient w.r.t. the logits.
template <typename T>
LossResult<T> weighted_cross_entropy(const Mat<T>& logits, std::span<const int> targets,
                                     std::type_identity_t<std::span<const T>> weights);

template <typename T>
struct LossAndGrads {
    double loss = 0.0;
    MlpParams<T> grads;
};

/// Forward pass, loss, and backpropagated gradients for one batch.
template <typename T>
LossAndGrads<T> loss_and_gradients(const MlpParams<T>& params, const Mat<T>& x,
                                   std::span<const int> targets,
                                   std::type_identity_t<std::span<const T>> weights);

/// One bias-corrected Adam update. Parameter tensors update independently,
/// coordinate by coordinate.
template <typename T>
void adam_step(MlpParams<T>& params, const MlpParams<T>& grads, AdamState<T>& state,
               const TrainConfig& config);

struct TrainedModel {
    MlpParams<float> params;  // best checkpoint
    double best_score = 0.0;  // monitor balanced accuracy at the checkpoint
    int best_epoch = 0;
    int epochs_run = 0;
    int input_width = 0;
    std::vector<std::string> families;
    TrainConfig config;
};

/// Optional instrumentation for training runs.
struct TrainHooks {
    /// Called once per epoch with the monitor balanced accuracy; a returned
    /// value replaces the score used for checkpointing and early stopping.
    std::function<double(int epoch, double score)> monitor_override;
    /// Called once per epoch after scoring.
    std::function<void(int epoch, double score)> on_epoch;
    /// Called for every mini-batch with the training-set row indices it uses.
    std::function<void(int epoch, std::span<const int> rows)> on_batch;
};

/// Train on `train`, monitoring balanced accuracy on `monitor` after every
/// epoch. Each epoch shuffles the training rows with a stream derived from
/// (seed, epoch) and steps Adam once per mini-batch (final partial batch
/// included). Stops after `patience` epochs without strict improvement or at
/// max_epochs, and returns the best checkpoint.
TrainedModel train(const EncodedDataset& train, const EncodedDataset& monitor,
                   const TrainConfig& config, const TrainHooks& hooks = {});

struct Prediction {
    std::string family;
    std::vector<double> distribution;  // softmax over families, sums to 1
};

/// Softmax prediction for one input vector; argmax ties break toward the
/// smallest class index.
Prediction predict(const TrainedModel& model, std::span<const float> x);

/// Argmax class index per row of x.
std::vector<int> predict_classes(const MlpParams<float>& params, const Mat<float>& x);

/// Checkpoint serialization; the layout is documented in README.md.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace lingaff

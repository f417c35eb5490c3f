#include "lingaff/nnet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lingaff/error.hpp"
#include "lingaff/eval.hpp"
#include "lingaff/rng.hpp"

namespace lingaff {

namespace {

// Stream tags for seed derivation (see rng.hpp).
constexpr std::uint64_t kInitStream = 0x11;
constexpr std::uint64_t kEpochStream = 0x22;

}  // namespace

std::vector<float> class_weights(std::span<const int> targets, int num_classes) {
    std::vector<long> counts(static_cast<std::size_t>(num_classes), 0);
    for (const int t : targets) {
        if (t < 0 || t >= num_classes)
            throw ArgumentError("class_weights: target " + std::to_string(t) + " out of range");
        ++counts[static_cast<std::size_t>(t)];
    }
    const double n = static_cast<double>(targets.size());
    std::vector<float> weights(static_cast<std::size_t>(num_classes), 0.0f);
    for (int c = 0; c < num_classes; ++c) {
        const long n_c = counts[static_cast<std::size_t>(c)];
        if (n_c > 0)
            weights[static_cast<std::size_t>(c)] =
                static_cast<float>(n / (static_cast<double>(num_classes) * static_cast<double>(n_c)));
    }
    return weights;
}

template <typename T>
MlpParams<T> init_params(std::uint64_t seed, int input_width, int num_classes) {
    if (input_width < 1) throw ArgumentError("init_params: input width must be >= 1");
    if (num_classes < 2) throw ArgumentError("init_params: need at least 2 classes");

    const int hidden = 4 * num_classes;
    MlpParams<T> params;
    params.w1 = Mat<T>(input_width, hidden);
    params.b1.assign(static_cast<std::size_t>(hidden), T{});
    params.w2 = Mat<T>(hidden, hidden);
    params.b2.assign(static_cast<std::size_t>(hidden), T{});
    params.w3 = Mat<T>(hidden, num_classes);
    params.b3.assign(static_cast<std::size_t>(num_classes), T{});

    Pcg32 rng(derive_seed(seed, kInitStream));
    const auto fill = [&rng](Mat<T>& w, int fan_in) {
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
        for (T& x : w.data()) x = static_cast<T>(rng.uniform(-bound, bound));
    };
    fill(params.w1, input_width);
    fill(params.w2, hidden);
    fill(params.w3, hidden);
    return params;
}

namespace {

template <typename T>
struct ForwardCache {
    Mat<T> h1, h2, logits;
};

template <typename T>
ForwardCache<T> forward_cached(const MlpParams<T>& params, const Mat<T>& x) {
    if (x.cols() != params.w1.rows())
        throw DimensionError("forward: input width " + std::to_string(x.cols()) +
                             " does not match model width " + std::to_string(params.w1.rows()));
    ForwardCache<T> cache;
    cache.h1 = matmul(x, params.w1);
    add_row_bias(cache.h1, std::span<const T>(params.b1));
    relu_inplace(cache.h1);
    cache.h2 = matmul(cache.h1, params.w2);
    add_row_bias(cache.h2, std::span<const T>(params.b2));
    relu_inplace(cache.h2);
    cache.logits = matmul(cache.h2, params.w3);
    add_row_bias(cache.logits, std::span<const T>(params.b3));
    return cache;
}

}  // namespace

template <typename T>
Mat<T> forward(const MlpParams<T>& params, const Mat<T>& x) {
    return forward_cached(params, x).logits;
}

template <typename T>
LossResult<T> weighted_cross_entropy(const Mat<T>& logits, std::span<const int> targets,
                                     std::type_identity_t<std::span<const T>> weights) {
    if (static_cast<std::size_t>(logits.rows()) != targets.size())
        throw DimensionError("weighted_cross_entropy: batch size mismatch");
    if (targets.empty()) throw ArgumentError("weighted_cross_entropy: empty batch");

    const int k = logits.cols();
    LossResult<T> out;
    out.dlogits = Mat<T>(logits.rows(), k);

    double weighted_loss = 0.0;
    double weight_sum = 0.0;
    for (int i = 0; i < logits.rows(); ++i) {
        const int y = targets[static_cast<std::size_t>(i)];
        if (y < 0 || y >= k)
            throw ArgumentError("weighted_cross_entropy: target " + std::to_string(y) +
                                " out of range");
        const double w = static_cast<double>(weights[static_cast<std::size_t>(y)]);
        weight_sum += w;

        const auto row = logits.row(i);
        double max_logit = -std::numeric_limits<double>::infinity();
        for (const T v : row) max_logit = std::max(max_logit, static_cast<double>(v));
        double exp_sum = 0.0;
        for (const T v : row) exp_sum += std::exp(static_cast<double>(v) - max_logit);
        const double lse = max_logit + std::log(exp_sum);
        weighted_loss += w * (lse - static_cast<double>(row[static_cast<std::size_t>(y)]));

        auto drow = out.dlogits.row(i);
        for (int c = 0; c < k; ++c) {
            const double p =
                std::exp(static_cast<double>(row[static_cast<std::size_t>(c)]) - lse);
            drow[static_cast<std::size_t>(c)] = static_cast<T>(w * (p - (c == y ? 1.0 : 0.0)));
        }
    }
    if (!(weight_sum > 0.0))
        throw ArgumentError("weighted_cross_entropy: class weights sum to zero over the batch");

    out.loss = weighted_loss / weight_sum;
    const T inv = static_cast<T>(1.0 / weight_sum);
    for (T& g : out.dlogits.data()) g *= inv;
    return out;
}

template <typename T>
LossAndGrads<T> loss_and_gradients(const MlpParams<T>& params, const Mat<T>& x,
                                   std::span<const int> targets,
                                   std::type_identity_t<std::span<const T>> weights) {
    const ForwardCache<T> cache = forward_cached(params, x);
    auto ce = weighted_cross_entropy(cache.logits, targets, weights);

    LossAndGrads<T> out;
    out.loss = ce.loss;
    out.grads.w3 = matmul_at_b(cache.h2, ce.dlogits);
    out.grads.b3 = column_sums(ce.dlogits);

    Mat<T> dh2 = matmul_a_bt(ce.dlogits, params.w3);
    relu_backward_inplace(dh2, cache.h2);
    out.grads.w2 = matmul_at_b(cache.h1, dh2);
    out.grads.b2 = column_sums(dh2);

    Mat<T> dh1 = matmul_a_bt(dh2, params.w2);
    relu_backward_inplace(dh1, cache.h1);
    out.grads.w1 = matmul_at_b(x, dh1);
    out.grads.b1 = column_sums(dh1);
    return out;
}

namespace {

template <typename T>
void adam_update(std::span<T> theta, std::span<const T> grad, std::span<T> m, std::span<T> v,
                 double lr, double beta1, double beta2, double eps, double bias1, double bias2) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double g = static_cast<double>(grad[i]);
        const double mi = beta1 * static_cast<double>(m[i]) + (1.0 - beta1) * g;
        const double vi = beta2 * static_cast<double>(v[i]) + (1.0 - beta2) * g * g;
        m[i] = static_cast<T>(mi);
        v[i] = static_cast<T>(vi);
        const double m_hat = mi / bias1;
        const double v_hat = vi / bias2;
        theta[i] = static_cast<T>(static_cast<double>(theta[i]) -
                                  lr * m_hat / (std::sqrt(v_hat) + eps));
    }
}

template <typename T>
MlpParams<T> zeros_like(const MlpParams<T>& params) {
    MlpParams<T> z;
    z.w1 = Mat<T>(params.w1.rows(), params.w1.cols());
    z.b1.assign(params.b1.size(), T{});
    z.w2 = Mat<T>(params.w2.rows(), params.w2.cols());
    z.b2.assign(params.b2.size(), T{});
    z.w3 = Mat<T>(params.w3.rows(), params.w3.cols());
    z.b3.assign(params.b3.size(), T{});
    return z;
}

}  // namespace

template <typename T>
void adam_step(MlpParams<T>& params, const MlpParams<T>& grads, AdamState<T>& state,
               const TrainConfig& config) {
    if (state.t == 0) {
        state.m = zeros_like(params);
        state.v = zeros_like(params);
    }
    ++state.t;
    const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
    const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));

    const auto update = [&](std::span<T> theta, std::span<const T> grad, std::span<T> m,
                            std::span<T> v) {
        adam_update(theta, grad, m, v, config.learning_rate, config.beta1, config.beta2,
                    config.epsilon, bias1, bias2);
    };
    update(params.w1.data(), grads.w1.data(), state.m.w1.data(), state.v.w1.data());
    update(params.b1, grads.b1, state.m.b1, state.v.b1);
    update(params.w2.data(), grads.w2.data(), state.m.w2.data(), state.v.w2.data());
    update(params.b2, grads.b2, state.m.b2, state.v.b2);
    update(params.w3.data(), grads.w3.data(), state.m.w3.data(), state.v.w3.data());
    update(params.b3, grads.b3, state.m.b3, state.v.b3);
}

std::vector<int> predict_classes(const MlpParams<float>& params, const Mat<float>& x) {
    const Mat<float> logits = forward(params, x);
    std::vector<int> classes(static_cast<std::size_t>(x.rows()));
    for (int i = 0; i < logits.rows(); ++i) {
        const auto row = logits.row(i);
        int best = 0;
        for (int c = 1; c < logits.cols(); ++c)
            if (row[static_cast<std::size_t>(c)] > row[static_cast<std::size_t>(best)]) best = c;
        classes[static_cast<std::size_t>(i)] = best;
    }
    return classes;
}

TrainedModel train(const EncodedDataset& train_set, const EncodedDataset& monitor_set,
                   const TrainConfig& config, const TrainHooks& hooks) {
    if (train_set.rows() == 0) throw ArgumentError("train: empty training set");
    if (train_set.width() != monitor_set.width())
        throw DimensionError("train: training and monitor sets have different widths");
    if (train_set.families != monitor_set.families)
        throw ArgumentError("train: training and monitor sets have different family tables");
    if (config.patience < 1 || config.max_epochs < 1 || config.batch_size < 1)
        throw ArgumentError("train: patience, max_epochs, and batch_size must be positive");
    if (config.patience > config.max_epochs)
        throw ArgumentError("train: patience exceeds max_epochs");

    const std::set<int> distinct(train_set.targets.begin(), train_set.targets.end());
    if (distinct.size() < 2)
        throw ArgumentError("train: training set has a single class");

    const int k = static_cast<int>(train_set.families.size());
    const int width = train_set.width();
    const auto weights = class_weights(train_set.targets, k);

    MlpParams<float> params = init_params<float>(config.seed, width, k);
    AdamState<float> state;

    MlpParams<float> best_params = params;
    double best_score = -1.0;
    int best_epoch = 0;
    int epoch = 0;

    const int n = train_set.rows();
    Mat<float> batch_x;
    std::vector<int> batch_y;

    while (epoch < config.max_epochs) {
        ++epoch;
        Pcg32 rng(derive_seed(config.seed, kEpochStream, static_cast<std::uint64_t>(epoch)));
        const std::vector<int> order = shuffled_indices(n, rng);

        for (int start = 0; start < n; start += config.batch_size) {
            const int count = std::min(config.batch_size, n - start);
            batch_x = Mat<float>(count, width);
            batch_y.resize(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i) {
                const int row = order[static_cast<std::size_t>(start + i)];
                const auto src = train_set.vectors.row(row);
                std::copy(src.begin(), src.end(), batch_x.row(i).begin());
                batch_y[static_cast<std::size_t>(i)] = train_set.targets[static_cast<std::size_t>(row)];
            }
            const auto step = loss_and_gradients(params, batch_x, std::span<const int>(batch_y),
                                                 std::span<const float>(weights));
            adam_step(params, step.grads, state, config);
            if (hooks.on_batch)
                hooks.on_batch(epoch, std::span<const int>(order).subspan(
                                          static_cast<std::size_t>(start),
                                          static_cast<std::size_t>(count)));
        }

        const auto predicted = predict_classes(params, monitor_set.vectors);
        double score = balanced_accuracy(predicted, monitor_set.targets);
        if (hooks.monitor_override) score = hooks.monitor_override(epoch, score);
        if (hooks.on_epoch) hooks.on_epoch(epoch, score);

        if (score > best_score) {  // strict improvement
            best_score = score;
            best_epoch = epoch;
            best_params = params;
        }
        if (epoch - best_epoch >= config.patience) break;
    }

    TrainedModel model;
    model.params = std::move(best_params);
    model.best_score = best_score;
    model.best_epoch = best_epoch;
    model.epochs_run = epoch;
    model.input_width = width;
    model.families = train_set.families;
    model.config = config;
    return model;
}

Prediction predict(const TrainedModel& model, std::span<const float> x) {
    if (static_cast<int>(x.size()) != model.input_width)
        throw DimensionError("predict: input width " + std::to_string(x.size()) +
                             " does not match model width " + std::to_string(model.input_width));
    Mat<float> row(1, model.input_width);
    std::copy(x.begin(), x.end(), row.row(0).begin());
    const Mat<float> logits = forward(model.params, row);

    const int k = logits.cols();
    double max_logit = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) max_logit = std::max(max_logit, static_cast<double>(logits(0, c)));
    std::vector<double> distribution(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (int c = 0; c < k; ++c) {
        distribution[static_cast<std::size_t>(c)] =
            std::exp(static_cast<double>(logits(0, c)) - max_logit);
        sum += distribution[static_cast<std::size_t>(c)];
    }
    int best = 0;
    for (int c = 0; c < k; ++c) {
        distribution[static_cast<std::size_t>(c)] /= sum;
        if (distribution[static_cast<std::size_t>(c)] > distribution[static_cast<std::size_t>(best)])
            best = c;
    }
    return {model.families[static_cast<std::size_t>(best)], std::move(distribution)};
}

// ---------------------------------------------------------------------------
// checkpoint serialization (layout documented in README.md)

namespace {

constexpr char kMagic[8] = {'L', 'A', 'F', 'F', 'M', 'D', 'L', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t pos) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + 3])) << 24);
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

float get_f32(const std::string& in, std::size_t pos) {
    return std::bit_cast<float>(get_u32(in, pos));
}

void append_tensor(std::string& out, std::span<const float> values) {
    for (const float v : values) put_f32(out, v);
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
    nlohmann::json header;
    header["input_width"] = model.input_width;
    header["hidden_width"] = model.params.hidden_width();
    header["classes"] = model.params.num_classes();
    header["families"] = model.families;
    header["best_epoch"] = model.best_epoch;
    header["best_score"] = model.best_score;
    header["epochs_run"] = model.epochs_run;
    header["config"] = {{"learning_rate", model.config.learning_rate},
                        {"batch_size", model.config.batch_size},
                        {"max_epochs", model.config.max_epochs},
                        {"patience", model.config.patience},
                        {"beta1", model.config.beta1},
                        {"beta2", model.config.beta2},
                        {"epsilon", model.config.epsilon},
                        {"seed", model.config.seed}};
    const std::string header_text = header.dump();

    std::string blob;
    blob.append(kMagic, sizeof(kMagic));
    put_u32(blob, static_cast<std::uint32_t>(header_text.size()));
    blob += header_text;
    append_tensor(blob, model.params.w1.data());
    append_tensor(blob, model.params.b1);
    append_tensor(blob, model.params.w2.data());
    append_tensor(blob, model.params.b2);
    append_tensor(blob, model.params.w3.data());
    append_tensor(blob, model.params.b3);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open file for writing");
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error(path + ": write failed");
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string blob = buffer.str();

    if (blob.size() < sizeof(kMagic) + 4 || std::memcmp(blob.data(), kMagic, sizeof(kMagic)) != 0)
        throw ParseError(path + ": not a model checkpoint (bad magic)");
    const std::uint32_t header_len = get_u32(blob, sizeof(kMagic));
    std::size_t pos = sizeof(kMagic) + 4;
    if (blob.size() < pos + header_len) throw ParseError(path + ": truncated header");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(blob.substr(pos, header_len));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": bad header: " + e.what());
    }
    pos += header_len;

    TrainedModel model;
    model.input_width = header.at("input_width").get<int>();
    const int hidden = header.at("hidden_width").get<int>();
    const int k = header.at("classes").get<int>();
    model.families = header.at("families").get<std::vector<std::string>>();
    model.best_epoch = header.at("best_epoch").get<int>();
    model.best_score = header.at("best_score").get<double>();
    model.epochs_run = header.at("epochs_run").get<int>();
    const auto& cfg = header.at("config");
    model.config.learning_rate = cfg.at("learning_rate").get<double>();
    model.config.batch_size = cfg.at("batch_size").get<int>();
    model.config.max_epochs = cfg.at("max_epochs").get<int>();
    model.config.patience = cfg.at("patience").get<int>();
    model.config.beta1 = cfg.at("beta1").get<double>();
    model.config.beta2 = cfg.at("beta2").get<double>();
    model.config.epsilon = cfg.at("epsilon").get<double>();
    model.config.seed = cfg.at("seed").get<std::uint64_t>();

    if (hidden != 4 * k) throw ParseError(path + ": hidden width is not 4x class count");
    if (static_cast<int>(model.families.size()) != k)
        throw ParseError(path + ": family table size does not match class count");

    const std::size_t total = static_cast<std::size_t>(model.input_width) * hidden + hidden +
                              static_cast<std::size_t>(hidden) * hidden + hidden +
                              static_cast<std::size_t>(hidden) * k + k;
    if (blob.size() != pos + total * 4)
        throw ParseError(path + ": payload size mismatch");

    const auto read_into = [&](std::span<float> dest) {
        for (float& v : dest) {
            v = get_f32(blob, pos);
            pos += 4;
        }
    };
    model.params.w1 = Mat<float>(model.input_width, hidden);
    model.params.b1.resize(static_cast<std::size_t>(hidden));
    model.params.w2 = Mat<float>(hidden, hidden);
    model.params.b2.resize(static_cast<std::size_t>(hidden));
    model.params.w3 = Mat<float>(hidden, k);
    model.params.b3.resize(static_cast<std::size_t>(k));
    read_into(model.params.w1.data());
    read_into(model.params.b1);
    read_into(model.params.w2.data());
    read_into(model.params.b2);
    read_into(model.params.w3.data());
    read_into(model.params.b3);
    return model;
}

// explicit instantiations: float for training, double for gradient checks
template MlpParams<float> init_params<float>(std::uint64_t, int, int);
template MlpParams<double> init_params<double>(std::uint64_t, int, int);
template Mat<float> forward<float>(const MlpParams<float>&, const Mat<float>&);
template Mat<double> forward<double>(const MlpParams<double>&, const Mat<double>&);
template LossResult<float> weighted_cross_entropy<float>(const Mat<float>&, std::span<const int>,
                                                         std::span<const float>);
template LossResult<double> weighted_cross_entropy<double>(const Mat<double>&,
                                                           std::span<const int>,
                                                           std::span<const double>);
template LossAndGrads<float> loss_and_gradients<float>(const MlpParams<float>&, const Mat<float>&,
                                                       std::span<const int>,
                                                       std::span<const float>);
template LossAndGrads<double> loss_and_gradients<double>(const MlpParams<double>&,
                                                         const Mat<double>&, std::span<const int>,
                                                         std::span<const double>);
template void adam_step<float>(MlpParams<float>&, const MlpParams<float>&, AdamState<float>&,
                               const TrainConfig&);
template void adam_step<double>(MlpParams<double>&, const MlpParams<double>&, AdamState<double>&,
                                const TrainConfig&);

}  // namespace lingaff

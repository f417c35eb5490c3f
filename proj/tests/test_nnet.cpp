#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lingaff/error.hpp"
#include "lingaff/eval.hpp"
#include "lingaff/nnet.hpp"
#include "lingaff/rng.hpp"
#include "test_util.hpp"

using namespace lingaff;

namespace {

// All double values of a parameter struct, for finite-difference sweeps.
template <typename T>
std::vector<T*> flatten(MlpParams<T>& params) {
    std::vector<T*> out;
    for (auto& v : params.w1.data()) out.push_back(&v);
    for (auto& v : params.b1) out.push_back(&v);
    for (auto& v : params.w2.data()) out.push_back(&v);
    for (auto& v : params.b2) out.push_back(&v);
    for (auto& v : params.w3.data()) out.push_back(&v);
    for (auto& v : params.b3) out.push_back(&v);
    return out;
}

template <typename T>
std::vector<const T*> flatten(const MlpParams<T>& params) {
    std::vector<const T*> out;
    for (const T* p : flatten(const_cast<MlpParams<T>&>(params))) out.push_back(p);
    return out;
}

MlpParams<double> random_params(Pcg32& rng, int in, int hidden, int k) {
    MlpParams<double> params;
    params.w1 = Mat<double>(in, hidden);
    params.b1.resize(static_cast<std::size_t>(hidden));
    params.w2 = Mat<double>(hidden, hidden);
    params.b2.resize(static_cast<std::size_t>(hidden));
    params.w3 = Mat<double>(hidden, k);
    params.b3.resize(static_cast<std::size_t>(k));
    for (double* v : flatten(params)) *v = rng.uniform(-0.8, 0.8);
    return params;
}

// Toy dataset: class decided by which of the first two inputs is hot.
EncodedDataset separable_dataset(int rows, std::uint64_t seed) {
    EncodedDataset ds;
    ds.mode = EncodeMode::lexical;
    ds.lexical_width = 4;
    ds.families = {"Alpha", "Beta"};
    ds.vectors = Mat<float>(rows, 4);
    Pcg32 rng(seed);
    for (int i = 0; i < rows; ++i) {
        const int cls = i % 2;
        ds.vectors(i, cls) = 1.0f;
        ds.vectors(i, 2) = static_cast<float>(rng.bernoulli(0.5));
        ds.vectors(i, 3) = static_cast<float>(rng.bernoulli(0.5));
        ds.targets.push_back(cls);
        ds.languages.push_back("lang" + std::to_string(i));
    }
    return ds;
}

}  // namespace

TEST_CASE("class_weights follow N / (K * n_c)") {
    const std::vector<int> targets{0, 0, 0, 0, 0, 0, 0, 0, 0, 1};  // 9:1
    const auto w = class_weights(targets, 2);
    CHECK(w[0] == doctest::Approx(10.0 / (2.0 * 9.0)));
    CHECK(w[1] == doctest::Approx(10.0 / (2.0 * 1.0)));
    // sum_c w_c * n_c == N
    CHECK(9.0 * w[0] + 1.0 * w[1] == doctest::Approx(10.0));
}

TEST_CASE("init_params is seed-deterministic with zero biases") {
    const auto a = init_params<float>(42, 6, 2);
    const auto b = init_params<float>(42, 6, 2);
    CHECK(a == b);
    CHECK(a.hidden_width() == 8);

    for (const float v : a.b1) CHECK(v == 0.0f);
    for (const float v : a.b2) CHECK(v == 0.0f);
    for (const float v : a.b3) CHECK(v == 0.0f);

    const auto c = init_params<float>(43, 6, 2);
    CHECK(a.w1.data() != c.w1.data());
}

TEST_CASE("init_params bound is sqrt(6/fan_in)") {
    // fan_in 6 gives bound 1.0 for the first layer
    const auto params = init_params<double>(7, 6, 2);
    double max_abs = 0.0;
    for (const double v : params.w1.data()) {
        CHECK(std::abs(v) <= 1.0);
        max_abs = std::max(max_abs, std::abs(v));
    }
    CHECK(max_abs > 0.85);  // 48 uniform draws reach close to the bound

    const double bound2 = std::sqrt(6.0 / 8.0);
    for (const double v : params.w2.data()) CHECK(std::abs(v) <= bound2);
}

TEST_CASE("forward matches hand-computed arithmetic on a 2-2-2 network") {
    MlpParams<double> params;
    params.w1 = Mat<double>(2, 2);
    params.w1(0, 0) = 0.5;
    params.w1(0, 1) = -0.25;
    params.w1(1, 0) = 1.0;
    params.w1(1, 1) = 0.75;
    params.b1 = {0.1, -0.2};
    params.w2 = Mat<double>(2, 2);
    params.w2(0, 0) = -1.0;
    params.w2(0, 1) = 0.5;
    params.w2(1, 0) = 0.25;
    params.w2(1, 1) = 0.5;
    params.b2 = {0.0, 0.3};
    params.w3 = Mat<double>(2, 2);
    params.w3(0, 0) = 2.0;
    params.w3(0, 1) = -1.0;
    params.w3(1, 0) = 0.5;
    params.w3(1, 1) = 1.5;
    params.b3 = {-0.5, 0.25};

    Mat<double> x(1, 2);
    x(0, 0) = 1.0;
    x(0, 1) = 2.0;

    // z1 = [2.6, 1.05]; h1 = [2.6, 1.05]
    // z2 = [-2.3375, 2.125]; h2 = [0, 2.125]
    // logits = [0.5625, 3.4375]
    const auto logits = forward(params, x);
    CHECK(logits(0, 0) == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK(logits(0, 1) == doctest::Approx(3.4375).epsilon(1e-12));
}

TEST_CASE("forward: zero parameters give zero logits") {
    MlpParams<float> params;
    params.w1 = Mat<float>(3, 8);
    params.b1.assign(8, 0.0f);
    params.w2 = Mat<float>(8, 8);
    params.b2.assign(8, 0.0f);
    params.w3 = Mat<float>(8, 2);
    params.b3.assign(2, 0.0f);

    Mat<float> x(2, 3);
    x(0, 0) = 1.0f;
    x(1, 2) = 1.0f;
    const auto logits = forward(params, x);
    for (const float v : logits.data()) CHECK(v == 0.0f);
}

TEST_CASE("forward on a batch equals forward per sample") {
    Pcg32 rng(8);
    const auto params = random_params(rng, 5, 4, 3);
    Mat<double> batch(6, 5);
    for (auto& v : batch.data()) v = rng.uniform(-1.0, 1.0);

    const auto full = forward(params, batch);
    for (int i = 0; i < batch.rows(); ++i) {
        Mat<double> single(1, 5);
        std::copy(batch.row(i).begin(), batch.row(i).end(), single.row(0).begin());
        const auto one = forward(params, single);
        for (int c = 0; c < full.cols(); ++c)
            CHECK(one(0, c) == doctest::Approx(full(i, c)).epsilon(1e-12));
    }
}

TEST_CASE("forward rejects width mismatches") {
    const auto params = init_params<float>(1, 4, 2);
    Mat<float> x(1, 3);
    CHECK_THROWS_AS(forward(params, x), DimensionError);
}

TEST_CASE("uniform softmax loss is ln 2") {
    Mat<double> logits(1, 2);  // [0, 0]
    const std::vector<int> targets{0};
    const std::vector<double> weights{1.0, 1.0};
    const auto result = weighted_cross_entropy(logits, targets, weights);
    CHECK(result.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("scaling all class weights leaves the loss unchanged") {
    Pcg32 rng(19);
    Mat<double> logits(8, 3);
    for (auto& v : logits.data()) v = rng.uniform(-2.0, 2.0);
    std::vector<int> targets;
    for (int i = 0; i < 8; ++i) targets.push_back(static_cast<int>(rng.next_below(3)));
    const std::vector<double> weights{0.5, 1.5, 3.0};
    std::vector<double> doubled{1.0, 3.0, 6.0};

    const auto a = weighted_cross_entropy(logits, targets, weights);
    const auto b = weighted_cross_entropy(logits, targets, doubled);
    CHECK(a.loss == doctest::Approx(b.loss).epsilon(1e-12));
}

TEST_CASE("loss is stable for large logits") {
    Mat<double> logits(1, 2);
    logits(0, 0) = 700.0;
    logits(0, 1) = -700.0;
    const std::vector<int> targets{1};
    const std::vector<double> weights{1.0, 1.0};
    const auto result = weighted_cross_entropy(logits, targets, weights);
    CHECK(std::isfinite(result.loss));
    CHECK(result.loss == doctest::Approx(1400.0).epsilon(1e-9));
}

TEST_CASE("imbalanced classes contribute equal gradient mass at uniform logits") {
    Mat<double> logits(10, 2);  // all zero
    std::vector<int> targets(10, 0);
    targets[9] = 1;  // 9:1 imbalance
    const auto fweights = class_weights(targets, 2);
    const std::vector<double> weights{fweights[0], fweights[1]};

    const auto result = weighted_cross_entropy(logits, targets, weights);
    double mass[2] = {0.0, 0.0};
    for (int i = 0; i < 10; ++i)
        for (int c = 0; c < 2; ++c)
            mass[targets[static_cast<std::size_t>(i)]] += std::abs(result.dlogits(i, c));
    CHECK(mass[0] == doctest::Approx(mass[1]).epsilon(1e-9));
}

TEST_CASE("analytic gradients match central finite differences") {
    Pcg32 rng(4242);
    int networks_checked = 0;
    while (networks_checked < 5) {
        const int in = 2 + static_cast<int>(rng.next_below(4));
        const int hidden = 2 + static_cast<int>(rng.next_below(4));
        const int k = 2 + static_cast<int>(rng.next_below(2));
        const int batch = 3 + static_cast<int>(rng.next_below(5));

        auto params = random_params(rng, in, hidden, k);
        Mat<double> x(batch, in);
        for (auto& v : x.data()) v = rng.uniform(-1.0, 1.0);
        std::vector<int> targets;
        for (int i = 0; i < batch; ++i) targets.push_back(static_cast<int>(rng.next_below(
            static_cast<std::uint32_t>(k))));
        std::vector<double> weights;
        for (int c = 0; c < k; ++c) weights.push_back(rng.uniform(0.5, 2.0));

        // keep pre-activations away from the ReLU kink so the finite
        // difference does not straddle it
        const auto margins_ok = [&] {
            auto h1 = matmul(x, params.w1);
            add_row_bias(h1, std::span<const double>(params.b1));
            for (const double z : h1.data())
                if (std::abs(z) < 1e-3) return false;
            relu_inplace(h1);
            auto h2 = matmul(h1, params.w2);
            add_row_bias(h2, std::span<const double>(params.b2));
            for (const double z : h2.data())
                if (std::abs(z) < 1e-3) return false;
            return true;
        };
        if (!margins_ok()) continue;
        ++networks_checked;

        const auto analytic = loss_and_gradients(params, x, targets, weights);
        const auto grad_values = flatten(analytic.grads);

        auto coords = flatten(params);
        const double step = 1e-5;
        double max_rel = 0.0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            const double original = *coords[i];
            *coords[i] = original + step;
            const double up = loss_and_gradients(params, x, targets, weights).loss;
            *coords[i] = original - step;
            const double down = loss_and_gradients(params, x, targets, weights).loss;
            *coords[i] = original;
            const double fd = (up - down) / (2.0 * step);
            const double an = *grad_values[i];
            const double denom = std::max(std::abs(fd) + std::abs(an), 1e-8);
            max_rel = std::max(max_rel, std::abs(fd - an) / denom);
        }
        CHECK(max_rel < 1e-4);
    }
}

TEST_CASE("adam first step moves by about -lr * sign(g)") {
    MlpParams<float> params;
    params.w1 = Mat<float>(1, 4);
    params.b1.assign(4, 0.0f);
    params.w2 = Mat<float>(4, 4);
    params.b2.assign(4, 0.0f);
    params.w3 = Mat<float>(4, 2);
    params.b3.assign(2, 0.0f);

    MlpParams<float> grads = params;
    grads.w1(0, 0) = 0.5f;
    grads.w1(0, 1) = -3.0f;
    grads.w1(0, 2) = 0.001f;

    AdamState<float> state;
    TrainConfig config;
    adam_step(params, grads, state, config);

    CHECK(state.t == 1);
    CHECK(params.w1(0, 0) == doctest::Approx(-1e-3).epsilon(1e-4));
    CHECK(params.w1(0, 1) == doctest::Approx(1e-3).epsilon(1e-4));
    CHECK(params.w1(0, 2) == doctest::Approx(-1e-3).epsilon(1e-2));
    CHECK(params.w1(0, 3) == 0.0f);  // zero gradient coordinate unchanged
    // other tensors had zero gradients and stay put
    for (const float v : params.w2.data()) CHECK(v == 0.0f);
    for (const float v : params.b3) CHECK(v == 0.0f);
}

TEST_CASE("adam with all-zero gradients leaves parameters unchanged") {
    auto params = init_params<float>(3, 4, 2);
    const auto before = params;
    MlpParams<float> grads;
    grads.w1 = Mat<float>(4, 8);
    grads.b1.assign(8, 0.0f);
    grads.w2 = Mat<float>(8, 8);
    grads.b2.assign(8, 0.0f);
    grads.w3 = Mat<float>(8, 2);
    grads.b3.assign(2, 0.0f);

    AdamState<float> state;
    TrainConfig config;
    adam_step(params, grads, state, config);
    CHECK(params == before);
    CHECK(state.t == 1);
}

TEST_CASE("train fits a linearly separable toy set") {
    const auto train_ds = separable_dataset(20, 1);
    const auto monitor_ds = separable_dataset(10, 2);

    TrainConfig config;
    config.max_epochs = 2000;
    config.patience = 100;
    config.seed = 3;
    const auto model = train(train_ds, monitor_ds, config);

    CHECK(model.best_score == 1.0);
    CHECK(model.epochs_run < 2000);  // early stopping fired
    CHECK(model.epochs_run == model.best_epoch + config.patience);

    const auto predicted = predict_classes(model.params, monitor_ds.vectors);
    int correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        correct += predicted[i] == monitor_ds.targets[i];
    CHECK(correct == static_cast<int>(predicted.size()));
}

TEST_CASE("training stops exactly patience epochs after the frozen score") {
    const auto train_ds = separable_dataset(12, 4);
    const auto monitor_ds = separable_dataset(8, 5);

    const int freeze_after = 7;
    TrainConfig config;
    config.max_epochs = 300;
    config.patience = 25;
    config.seed = 11;

    TrainHooks hooks;
    hooks.monitor_override = [freeze_after](int epoch, double) {
        return 0.1 * std::min(epoch, freeze_after);  // improves until e*, frozen after
    };

    const auto model = train(train_ds, monitor_ds, config, hooks);
    CHECK(model.best_epoch == freeze_after);
    CHECK(model.epochs_run == freeze_after + config.patience);

    // the returned checkpoint is the epoch-e* parameter state
    TrainConfig short_config = config;
    short_config.max_epochs = freeze_after;
    short_config.patience = freeze_after;
    const auto reference = train(train_ds, monitor_ds, short_config, hooks);
    CHECK(model.params == reference.params);
}

TEST_CASE("single-class training sets are rejected") {
    auto ds = separable_dataset(10, 6);
    std::fill(ds.targets.begin(), ds.targets.end(), 0);
    TrainConfig config;
    config.max_epochs = 10;
    config.patience = 5;
    CHECK_THROWS_AS(train(ds, ds, config), ArgumentError);
}

TEST_CASE("batch partitioning covers all rows, final partial batch included") {
    const auto train_ds = separable_dataset(10, 7);
    const auto monitor_ds = separable_dataset(4, 8);

    TrainConfig config;
    config.max_epochs = 3;
    config.patience = 3;
    config.batch_size = 4;

    std::vector<std::size_t> batch_sizes;
    TrainHooks hooks;
    hooks.on_batch = [&](int, std::span<const int> rows) { batch_sizes.push_back(rows.size()); };
    train(train_ds, monitor_ds, config, hooks);

    REQUIRE(batch_sizes.size() == 9);  // 3 epochs x ceil(10/4)
    CHECK(batch_sizes[0] == 4);
    CHECK(batch_sizes[1] == 4);
    CHECK(batch_sizes[2] == 2);

    SUBCASE("a batch larger than the set gives one batch per epoch") {
        batch_sizes.clear();
        TrainConfig full = config;
        full.batch_size = 2048;
        train(train_ds, monitor_ds, full, hooks);
        CHECK(batch_sizes == std::vector<std::size_t>{10, 10, 10});
    }
}

TEST_CASE("identical config and seed reproduce the model bit for bit") {
    const auto train_ds = separable_dataset(16, 9);
    const auto monitor_ds = separable_dataset(8, 10);
    TrainConfig config;
    config.max_epochs = 60;
    config.patience = 30;
    config.seed = 77;
    const auto a = train(train_ds, monitor_ds, config);
    const auto b = train(train_ds, monitor_ds, config);
    CHECK(a.params == b.params);
    CHECK(a.best_epoch == b.best_epoch);
    CHECK(a.best_score == b.best_score);
}

TEST_CASE("checkpoint optimality: returned score is the max epoch score") {
    const auto train_ds = separable_dataset(14, 12);
    const auto monitor_ds = separable_dataset(8, 13);
    TrainConfig config;
    config.max_epochs = 80;
    config.patience = 40;
    config.seed = 5;

    std::vector<double> scores;
    TrainHooks hooks;
    hooks.on_epoch = [&](int, double score) { scores.push_back(score); };
    const auto model = train(train_ds, monitor_ds, config, hooks);

    REQUIRE_FALSE(scores.empty());
    CHECK(model.best_score == *std::max_element(scores.begin(), scores.end()));

    const auto predicted = predict_classes(model.params, monitor_ds.vectors);
    CHECK(balanced_accuracy(predicted, monitor_ds.targets) == model.best_score);
}

TEST_CASE("predict returns a normalized distribution") {
    const auto train_ds = separable_dataset(12, 20);
    const auto monitor_ds = separable_dataset(6, 21);
    TrainConfig config;
    config.max_epochs = 30;
    config.patience = 15;
    const auto model = train(train_ds, monitor_ds, config);

    std::vector<float> x(4, 0.0f);
    x[0] = 1.0f;
    const auto prediction = predict(model, x);
    double sum = 0.0;
    for (const double p : prediction.distribution) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-9);
    CHECK((prediction.family == "Alpha" || prediction.family == "Beta"));

    SUBCASE("width mismatch raises") {
        std::vector<float> bad(5, 0.0f);
        CHECK_THROWS_AS(predict(model, bad), DimensionError);
    }
}

TEST_CASE("zero model predicts uniformly and ties break to class 0") {
    TrainedModel model;
    model.input_width = 3;
    model.families = {"Aster", "Rose"};
    model.params.w1 = Mat<float>(3, 8);
    model.params.b1.assign(8, 0.0f);
    model.params.w2 = Mat<float>(8, 8);
    model.params.b2.assign(8, 0.0f);
    model.params.w3 = Mat<float>(8, 2);
    model.params.b3.assign(2, 0.0f);

    const std::vector<float> x{1.0f, 0.0f, 1.0f};
    const auto prediction = predict(model, x);
    CHECK(prediction.family == "Aster");
    CHECK(prediction.distribution[0] == doctest::Approx(0.5));
    CHECK(prediction.distribution[1] == doctest::Approx(0.5));
}

TEST_CASE("adding a constant to all logits leaves the distribution unchanged") {
    TrainedModel model;
    model.input_width = 2;
    model.families = {"A", "B", "C"};
    model.params.w1 = Mat<float>(2, 12);
    model.params.b1.assign(12, 0.0f);
    model.params.w2 = Mat<float>(12, 12);
    model.params.b2.assign(12, 0.0f);
    model.params.w3 = Mat<float>(12, 3);
    model.params.b3 = {0.3f, -1.0f, 2.0f};

    const std::vector<float> x{1.0f, 1.0f};
    const auto base = predict(model, x);
    for (auto& b : model.params.b3) b += 5.0f;
    const auto shifted = predict(model, x);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(shifted.distribution[c] == doctest::Approx(base.distribution[c]).epsilon(1e-6));
}

TEST_CASE("model checkpoints round-trip") {
    const auto train_ds = separable_dataset(12, 30);
    const auto monitor_ds = separable_dataset(6, 31);
    TrainConfig config;
    config.max_epochs = 20;
    config.patience = 10;
    config.seed = 123;
    const auto model = train(train_ds, monitor_ds, config);

    testutil::TempDir dir;
    const auto path = (dir.path() / "model.laff").string();
    save_model(model, path);
    const auto loaded = load_model(path);

    CHECK(loaded.params == model.params);
    CHECK(loaded.families == model.families);
    CHECK(loaded.best_epoch == model.best_epoch);
    CHECK(loaded.best_score == model.best_score);
    CHECK(loaded.epochs_run == model.epochs_run);
    CHECK(loaded.input_width == model.input_width);
    CHECK(loaded.config.seed == model.config.seed);

    const std::vector<float> x{1.0f, 0.0f, 0.0f, 1.0f};
    CHECK(predict(loaded, x).family == predict(model, x).family);

    SUBCASE("corrupted magic is rejected") {
        const auto bad = (dir.path() / "bad.laff").string();
        lingaff::write_text_file(bad, "NOTAMODELxxxxxxxxxxxxxxxxx");
        CHECK_THROWS_AS(load_model(bad), ParseError);
    }
}

/*
 * Copyright 2026 The fairverify Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Blackbox classifiers f : record -> [0, 1].
//
// Classifiers are loaded from JSON documents:
//
//   {"type": "tree", "root": NODE}
//       NODE = {"feature": "x", "threshold": t, "le": NODE, "gt": NODE}
//            | {"leaf": v}                       le is taken when x <= t
//   {"type": "linear", "features": [...], "weights": [...], "bias": b,
//    "output": "threshold" | "clamp" | "logistic"}
//   {"type": "net", "features": [...], "output": ...,
//    "layers": [{"weights": [[...], ...], "bias": [...]}, ...]}
//       ReLU after every hidden layer; the last layer has one unit.
//   {"type": "constant", "value": v}
//   {"type": "feature", "feature": "x"}         identity on one feature
//   {"type": "external", "command": ["prog", "arg", ...],
//    "features": [...], "binary": true}
//
// "threshold" output is 1 when the score is >= 0 and 0 otherwise; "clamp"
// maps the score into [0, 1]; "logistic" applies 1 / (1 + e^-score).
//
// An external classifier is a long-running process. For each batch the
// verifier writes one line per record, `name=value,name=value,...`, and
// flushes; the process answers with one decimal in [0, 1] per line.
// Features default to the model's returned variables.

#ifndef FAIRVERIFY_CLASSIFIER_H_
#define FAIRVERIFY_CLASSIFIER_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairverify/popmodel.h"

namespace fairverify {

// A classifier specialized to one record layout, with feature positions
// resolved up front.
class BoundClassifier {
 public:
  virtual ~BoundClassifier() = default;

  virtual double Evaluate(std::span<const double> values) const = 0;
  // `rows` holds n records of `stride` doubles each. Results agree exactly
  // with n calls to Evaluate.
  virtual void EvaluateBatch(const double* rows, std::size_t n,
                             std::size_t stride, double* out) const;
};

class Classifier {
 public:
  virtual ~Classifier() = default;

  // Throws MissingFeature when the layout lacks a referenced feature.
  virtual std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const = 0;

  // Outputs lie in {0, 1}.
  virtual bool is_binary() const = 0;
  // Safe to evaluate from several threads at once.
  virtual bool is_shareable() const { return true; }
  virtual std::string_view kind() const = 0;

  // Convenience forms that bind per call.
  double Evaluate(const FeatureRecord& record) const;
  std::vector<double> EvaluateBatch(std::span<const FeatureRecord> records) const;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

enum class OutputTransform { kThreshold, kClamp, kLogistic };

class DecisionTree : public Classifier {
 public:
  struct Node {
    // Index into features(), or -1 for a leaf.
    int feature = -1;
    double threshold = 0.0;
    int le = -1;
    int gt = -1;
    double value = 0.0;
  };

  // nodes[0] is the root. Leaf values must lie in [0, 1].
  DecisionTree(std::vector<std::string> features, std::vector<Node> nodes);

  std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const override;
  bool is_binary() const override;
  std::string_view kind() const override { return "tree"; }

  const std::vector<std::string>& features() const { return features_; }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<std::string> features_;
  std::vector<Node> nodes_;
};

class LinearModel : public Classifier {
 public:
  LinearModel(std::vector<std::string> features, std::vector<double> weights,
              double bias, OutputTransform output);

  std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const override;
  bool is_binary() const override {
    return output_ == OutputTransform::kThreshold;
  }
  std::string_view kind() const override { return "linear"; }

  const std::vector<std::string>& features() const { return features_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  OutputTransform output() const { return output_; }

 private:
  std::vector<std::string> features_;
  std::vector<double> weights_;
  double bias_;
  OutputTransform output_;
};

class FeedForwardNet : public Classifier {
 public:
  struct Layer {
    // weights[unit][input]
    std::vector<std::vector<double>> weights;
    std::vector<double> bias;
  };

  FeedForwardNet(std::vector<std::string> features, std::vector<Layer> layers,
                 OutputTransform output);

  std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const override;
  bool is_binary() const override {
    return output_ == OutputTransform::kThreshold;
  }
  std::string_view kind() const override { return "net"; }

  const std::vector<std::string>& features() const { return features_; }
  const std::vector<Layer>& layers() const { return layers_; }
  OutputTransform output() const { return output_; }

 private:
  std::vector<std::string> features_;
  std::vector<Layer> layers_;
  OutputTransform output_;
};

class ConstantClassifier : public Classifier {
 public:
  explicit ConstantClassifier(double value);

  std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const override;
  bool is_binary() const override { return value_ == 0.0 || value_ == 1.0; }
  std::string_view kind() const override { return "constant"; }
  double value() const { return value_; }

 private:
  double value_;
};

// f(v) = v[feature]. Values outside [0, 1] are rejected later by the
// estimator.
class FeatureClassifier : public Classifier {
 public:
  explicit FeatureClassifier(std::string feature, bool binary = false)
      : feature_(std::move(feature)), binary_(binary) {}

  std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const override;
  bool is_binary() const override { return binary_; }
  std::string_view kind() const override { return "feature"; }
  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
  bool binary_;
};

class ExternalClassifier : public Classifier {
 public:
  // `features` empty means "the layout's returned variables".
  ExternalClassifier(std::vector<std::string> command,
                     std::vector<std::string> features, bool binary);
  ~ExternalClassifier() override;

  std::unique_ptr<BoundClassifier> Bind(
      const std::shared_ptr<const Schema>& schema) const override;
  bool is_binary() const override { return binary_; }
  bool is_shareable() const override { return false; }
  std::string_view kind() const override { return "external"; }

  class Process;

 private:
  std::vector<std::string> command_;
  std::vector<std::string> features_;
  bool binary_;
  std::shared_ptr<Process> process_;
};

// Throws ConfigError for malformed documents.
ClassifierPtr ParseClassifierJson(std::string_view json_text);
ClassifierPtr LoadClassifierFile(const std::string& path);

}  // namespace fairverify

#endif  // FAIRVERIFY_CLASSIFIER_H_

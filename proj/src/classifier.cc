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

#include "fairverify/classifier.h"

#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "fairverify/error.h"
#include "fairverify/kernels.h"
#include "json.hpp"

namespace fairverify {

namespace {

std::vector<std::size_t> Resolve(const std::vector<std::string>& features,
                                 const Schema& schema) {
  std::vector<std::size_t> out;
  out.reserve(features.size());
  for (const std::string& name : features) {
    auto index = schema.IndexOf(name);
    if (!index) {
      throw MissingFeature("classifier input '" + name +
                           "' is not a model variable");
    }
    out.push_back(*index);
  }
  return out;
}

[[noreturn]] void ThrowUnassigned(const std::string& name) {
  throw MissingFeature("classifier input '" + name + "' has no value");
}

double Read(std::span<const double> values, std::size_t index,
            const std::string& name) {
  const double v = values[index];
  if (std::isnan(v)) ThrowUnassigned(name);
  return v;
}

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double ApplyOutput(OutputTransform output, double z) {
  switch (output) {
    case OutputTransform::kThreshold:
      return z >= 0.0 ? 1.0 : 0.0;
    case OutputTransform::kClamp: {
      const double v = z > 0.0 ? z : 0.0;
      return v < 1.0 ? v : 1.0;
    }
    case OutputTransform::kLogistic:
      return Logistic(z);
  }
  return z;
}

void ApplyOutputBatch(OutputTransform output, double* z, std::size_t n) {
  const KernelTable& k = ActiveKernels();
  switch (output) {
    case OutputTransform::kThreshold:
      k.threshold_ge_zero(z, n);
      return;
    case OutputTransform::kClamp:
      k.clamp01(z, n);
      return;
    case OutputTransform::kLogistic:
      for (std::size_t i = 0; i < n; ++i) z[i] = Logistic(z[i]);
      return;
  }
}

// Column-major copy of the selected features: cols[j * n + i].
void Gather(const double* rows, std::size_t n, std::size_t stride,
            const std::vector<std::size_t>& index,
            const std::vector<std::string>& names, std::vector<double>& cols) {
  cols.resize(index.size() * n);
  for (std::size_t j = 0; j < index.size(); ++j) {
    double* col = cols.data() + j * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = rows[i * stride + index[j]];
      if (std::isnan(v)) ThrowUnassigned(names[j]);
      col[i] = v;
    }
  }
}

// --- tree

class BoundTree : public BoundClassifier {
 public:
  BoundTree(const DecisionTree& tree, std::vector<std::size_t> index)
      : tree_(tree), index_(std::move(index)) {}

  double Evaluate(std::span<const double> values) const override {
    const auto& nodes = tree_.nodes();
    const DecisionTree::Node* node = &nodes[0];
    while (node->feature >= 0) {
      const auto f = static_cast<std::size_t>(node->feature);
      const double x = Read(values, index_[f], tree_.features()[f]);
      node = &nodes[static_cast<std::size_t>(x <= node->threshold ? node->le
                                                                  : node->gt)];
    }
    return node->value;
  }

 private:
  const DecisionTree& tree_;
  std::vector<std::size_t> index_;
};

// --- linear

class BoundLinear : public BoundClassifier {
 public:
  BoundLinear(const LinearModel& model, std::vector<std::size_t> index)
      : model_(model), index_(std::move(index)) {}

  double Evaluate(std::span<const double> values) const override {
    double acc = model_.bias();
    for (std::size_t j = 0; j < index_.size(); ++j) {
      const double p =
          model_.weights()[j] * Read(values, index_[j], model_.features()[j]);
      acc = acc + p;
    }
    return ApplyOutput(model_.output(), acc);
  }

  void EvaluateBatch(const double* rows, std::size_t n, std::size_t stride,
                     double* out) const override {
    thread_local std::vector<double> cols;
    Gather(rows, n, stride, index_, model_.features(), cols);
    const KernelTable& k = ActiveKernels();
    std::fill(out, out + n, model_.bias());
    for (std::size_t j = 0; j < index_.size(); ++j) {
      k.affine_accumulate(out, cols.data() + j * n, model_.weights()[j], n);
    }
    ApplyOutputBatch(model_.output(), out, n);
  }

 private:
  const LinearModel& model_;
  std::vector<std::size_t> index_;
};

// --- net

class BoundNet : public BoundClassifier {
 public:
  BoundNet(const FeedForwardNet& net, std::vector<std::size_t> index)
      : net_(net), index_(std::move(index)) {}

  double Evaluate(std::span<const double> values) const override {
    thread_local std::vector<double> a;
    thread_local std::vector<double> b;
    a.resize(index_.size());
    for (std::size_t j = 0; j < index_.size(); ++j) {
      a[j] = Read(values, index_[j], net_.features()[j]);
    }
    const auto& layers = net_.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& layer = layers[l];
      b.resize(layer.bias.size());
      for (std::size_t u = 0; u < layer.bias.size(); ++u) {
        double acc = layer.bias[u];
        for (std::size_t j = 0; j < a.size(); ++j) {
          const double p = layer.weights[u][j] * a[j];
          acc = acc + p;
        }
        b[u] = acc;
      }
      if (l + 1 < layers.size()) {
        for (double& v : b) v = v > 0.0 ? v : 0.0;
      }
      std::swap(a, b);
    }
    return ApplyOutput(net_.output(), a[0]);
  }

  void EvaluateBatch(const double* rows, std::size_t n, std::size_t stride,
                     double* out) const override {
    thread_local std::vector<double> a;
    thread_local std::vector<double> b;
    Gather(rows, n, stride, index_, net_.features(), a);
    const KernelTable& k = ActiveKernels();
    const auto& layers = net_.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& layer = layers[l];
      const std::size_t inputs = layer.weights.empty() ? 0 : layer.weights[0].size();
      b.resize(layer.bias.size() * n);
      for (std::size_t u = 0; u < layer.bias.size(); ++u) {
        double* acc = b.data() + u * n;
        std::fill(acc, acc + n, layer.bias[u]);
        for (std::size_t j = 0; j < inputs; ++j) {
          k.affine_accumulate(acc, a.data() + j * n, layer.weights[u][j], n);
        }
      }
      if (l + 1 < layers.size()) k.relu(b.data(), b.size());
      std::swap(a, b);
    }
    std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), out);
    ApplyOutputBatch(net_.output(), out, n);
  }

 private:
  const FeedForwardNet& net_;
  std::vector<std::size_t> index_;
};

// --- constant and identity

class BoundConstant : public BoundClassifier {
 public:
  explicit BoundConstant(double value) : value_(value) {}
  double Evaluate(std::span<const double>) const override { return value_; }

 private:
  double value_;
};

class BoundFeature : public BoundClassifier {
 public:
  BoundFeature(std::string name, std::size_t index)
      : name_(std::move(name)), index_(index) {}
  double Evaluate(std::span<const double> values) const override {
    return Read(values, index_, name_);
  }

 private:
  std::string name_;
  std::size_t index_;
};

}  // namespace

// ---------------------------------------------------------------------------

void BoundClassifier::EvaluateBatch(const double* rows, std::size_t n,
                                    std::size_t stride, double* out) const {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = Evaluate(std::span<const double>(rows + i * stride, stride));
  }
}

double Classifier::Evaluate(const FeatureRecord& record) const {
  return Bind(record.schema_ptr())->Evaluate(record.values());
}

std::vector<double> Classifier::EvaluateBatch(
    std::span<const FeatureRecord> records) const {
  std::vector<double> out(records.size());
  std::size_t i = 0;
  while (i < records.size()) {
    // Runs of records sharing a layout go through one batched call.
    const auto& schema = records[i].schema_ptr();
    std::size_t j = i;
    while (j < records.size() && records[j].schema_ptr() == schema) ++j;
    const std::size_t stride = schema->size();
    std::vector<double> rows;
    rows.reserve((j - i) * stride);
    for (std::size_t r = i; r < j; ++r) {
      rows.insert(rows.end(), records[r].values().begin(),
                  records[r].values().end());
    }
    Bind(schema)->EvaluateBatch(rows.data(), j - i, stride, out.data() + i);
    i = j;
  }
  return out;
}

DecisionTree::DecisionTree(std::vector<std::string> features,
                           std::vector<Node> nodes)
    : features_(std::move(features)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ConfigError("decision tree has no nodes");
  // Children must point forward, which also rules out cycles.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.feature < 0) {
      if (!(n.value >= 0.0 && n.value <= 1.0)) {
        throw ConfigError("decision tree leaf value outside [0, 1]");
      }
      continue;
    }
    if (static_cast<std::size_t>(n.feature) >= features_.size()) {
      throw ConfigError("decision tree node references an unknown feature");
    }
    for (int child : {n.le, n.gt}) {
      if (child <= static_cast<int>(i) ||
          child >= static_cast<int>(nodes_.size())) {
        throw ConfigError("decision tree child index out of order");
      }
    }
  }
}

std::unique_ptr<BoundClassifier> DecisionTree::Bind(
    const std::shared_ptr<const Schema>& schema) const {
  return std::make_unique<BoundTree>(*this, Resolve(features_, *schema));
}

bool DecisionTree::is_binary() const {
  for (const Node& n : nodes_) {
    if (n.feature < 0 && n.value != 0.0 && n.value != 1.0) return false;
  }
  return true;
}

LinearModel::LinearModel(std::vector<std::string> features,
                         std::vector<double> weights, double bias,
                         OutputTransform output)
    : features_(std::move(features)),
      weights_(std::move(weights)),
      bias_(bias),
      output_(output) {
  if (features_.size() != weights_.size()) {
    throw ConfigError("linear model needs one weight per feature");
  }
}

std::unique_ptr<BoundClassifier> LinearModel::Bind(
    const std::shared_ptr<const Schema>& schema) const {
  return std::make_unique<BoundLinear>(*this, Resolve(features_, *schema));
}

FeedForwardNet::FeedForwardNet(std::vector<std::string> features,
                               std::vector<Layer> layers,
                               OutputTransform output)
    : features_(std::move(features)),
      layers_(std::move(layers)),
      output_(output) {
  if (layers_.empty()) throw ConfigError("network has no layers");
  std::size_t width = features_.size();
  for (const Layer& layer : layers_) {
    if (layer.weights.size() != layer.bias.size() || layer.bias.empty()) {
      throw ConfigError("network layer needs one bias per unit");
    }
    for (const auto& row : layer.weights) {
      if (row.size() != width) {
        throw ConfigError("network layer weight row has wrong width");
      }
    }
    width = layer.bias.size();
  }
  if (width != 1) throw ConfigError("network output layer must have one unit");
}

std::unique_ptr<BoundClassifier> FeedForwardNet::Bind(
    const std::shared_ptr<const Schema>& schema) const {
  return std::make_unique<BoundNet>(*this, Resolve(features_, *schema));
}

ConstantClassifier::ConstantClassifier(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError("constant classifier value outside [0, 1]");
  }
}

std::unique_ptr<BoundClassifier> ConstantClassifier::Bind(
    const std::shared_ptr<const Schema>&) const {
  return std::make_unique<BoundConstant>(value_);
}

std::unique_ptr<BoundClassifier> FeatureClassifier::Bind(
    const std::shared_ptr<const Schema>& schema) const {
  return std::make_unique<BoundFeature>(feature_,
                                        Resolve({feature_}, *schema)[0]);
}

// ---------------------------------------------------------------------------
// External process

class ExternalClassifier::Process {
 public:
  explicit Process(std::vector<std::string> command)
      : command_(std::move(command)) {}

  ~Process() {
    if (pid_ <= 0) return;
    ::close(fd_);
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }

  void Query(const std::string& request, std::size_t n, double* out) {
    std::lock_guard<std::mutex> lock(mu_);
    if (failed_) throw ExternalProtocolError(failure_);
    try {
      if (pid_ <= 0) Launch();
      WriteAll(request);
      for (std::size_t i = 0; i < n; ++i) out[i] = ParseReply(ReadLine());
    } catch (const ExternalProtocolError& e) {
      // The stream is out of sync after any error; refuse further use.
      failed_ = true;
      failure_ = e.what();
      throw;
    }
  }

 private:
  void Launch() {
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, sv) != 0) {
      throw ExternalProtocolError(std::string("socketpair: ") +
                                  std::strerror(errno));
    }
    std::vector<char*> argv;
    for (std::string& arg : command_) argv.push_back(arg.data());
    argv.push_back(nullptr);
    const pid_t pid = ::fork();
    if (pid < 0) {
      ::close(sv[0]);
      ::close(sv[1]);
      throw ExternalProtocolError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
      ::dup2(sv[1], STDIN_FILENO);
      ::dup2(sv[1], STDOUT_FILENO);
      ::close(sv[0]);
      ::close(sv[1]);
      ::execvp(argv[0], argv.data());
      ::_exit(127);
    }
    ::close(sv[1]);
    fd_ = sv[0];
    pid_ = pid;
  }

  void WriteAll(const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
      // MSG_NOSIGNAL: a dead child yields EPIPE instead of SIGPIPE.
      const ssize_t w =
          ::send(fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
      if (w < 0) {
        if (errno == EINTR) continue;
        throw ExternalProtocolError("classifier process closed its input");
      }
      done += static_cast<std::size_t>(w);
    }
  }

  std::string ReadLine() {
    for (;;) {
      const std::size_t nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      char chunk[4096];
      const ssize_t r = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (r < 0 && errno == EINTR) continue;
      if (r <= 0) throw ExternalProtocolError("classifier process exited");
      buffer_.append(chunk, static_cast<std::size_t>(r));
    }
  }

  static double ParseReply(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) start = line.size();
    double v = 0.0;
    const char* first = line.data() + start;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
      throw ExternalProtocolError("malformed classifier reply '" + line + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ExternalProtocolError("classifier reply '" + line +
                                  "' is outside [0, 1]");
    }
    return v;
  }

  std::vector<std::string> command_;
  std::mutex mu_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  bool failed_ = false;
  std::string failure_;
};

namespace {

class BoundExternal : public BoundClassifier {
 public:
  BoundExternal(std::shared_ptr<ExternalClassifier::Process> process,
                std::vector<std::string> names, std::vector<std::size_t> index)
      : process_(std::move(process)),
        names_(std::move(names)),
        index_(std::move(index)) {}

  double Evaluate(std::span<const double> values) const override {
    double out = 0.0;
    EvaluateBatch(values.data(), 1, values.size(), &out);
    return out;
  }

  void EvaluateBatch(const double* rows, std::size_t n, std::size_t stride,
                     double* out) const override {
    std::string request;
    char buf[64];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < index_.size(); ++j) {
        const double v = rows[i * stride + index_[j]];
        if (std::isnan(v)) ThrowUnassigned(names_[j]);
        if (j > 0) request += ',';
        request += names_[j];
        request += '=';
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        request.append(buf, res.ptr);
      }
      request += '\n';
    }
    process_->Query(request, n, out);
  }

 private:
  std::shared_ptr<ExternalClassifier::Process> process_;
  std::vector<std::string> names_;
  std::vector<std::size_t> index_;
};

}  // namespace

ExternalClassifier::ExternalClassifier(std::vector<std::string> command,
                                       std::vector<std::string> features,
                                       bool binary)
    : command_(std::move(command)),
      features_(std::move(features)),
      binary_(binary) {
  if (command_.empty()) throw ConfigError("external classifier needs a command");
  process_ = std::make_shared<Process>(command_);
}

ExternalClassifier::~ExternalClassifier() = default;

std::unique_ptr<BoundClassifier> ExternalClassifier::Bind(
    const std::shared_ptr<const Schema>& schema) const {
  std::vector<std::string> names = features_;
  if (names.empty()) {
    for (std::size_t i : schema->outputs()) names.push_back(schema->name(i));
  }
  std::vector<std::size_t> index = Resolve(names, *schema);
  return std::make_unique<BoundExternal>(process_, std::move(names),
                                         std::move(index));
}

// ---------------------------------------------------------------------------
// JSON loading

namespace {

using nlohmann::json;

const json& Field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("classifier: missing field '") + key + "'");
  }
  return j.at(key);
}

double Number(const json& j, const char* what) {
  if (!j.is_number()) {
    throw ConfigError(std::string("classifier: '") + what + "' must be a number");
  }
  return j.get<double>();
}

std::vector<std::string> Strings(const json& j, const char* what) {
  if (!j.is_array()) {
    throw ConfigError(std::string("classifier: '") + what + "' must be a list");
  }
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) {
      throw ConfigError(std::string("classifier: '") + what +
                        "' must hold strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> Numbers(const json& j, const char* what) {
  if (!j.is_array()) {
    throw ConfigError(std::string("classifier: '") + what + "' must be a list");
  }
  std::vector<double> out;
  for (const json& e : j) out.push_back(Number(e, what));
  return out;
}

OutputTransform ParseOutput(const json& j) {
  if (!j.contains("output")) return OutputTransform::kThreshold;
  const std::string s = j.at("output").get<std::string>();
  if (s == "threshold") return OutputTransform::kThreshold;
  if (s == "clamp") return OutputTransform::kClamp;
  if (s == "logistic") return OutputTransform::kLogistic;
  throw ConfigError("classifier: unknown output '" + s + "'");
}

int AddTreeNode(const json& j, std::vector<std::string>& features,
                std::map<std::string, int>& feature_index,
                std::vector<DecisionTree::Node>& nodes, int depth) {
  if (depth > 512) throw ConfigError("classifier: tree too deep");
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (j.is_object() && j.contains("leaf")) {
    nodes[static_cast<std::size_t>(id)].value = Number(j.at("leaf"), "leaf");
    return id;
  }
  const json& f = Field(j, "feature");
  if (!f.is_string()) throw ConfigError("classifier: 'feature' must be a string");
  const std::string name = f.get<std::string>();
  auto [it, inserted] =
      feature_index.emplace(name, static_cast<int>(features.size()));
  if (inserted) features.push_back(name);
  const double threshold = Number(Field(j, "threshold"), "threshold");
  const int le = AddTreeNode(Field(j, "le"), features, feature_index, nodes,
                             depth + 1);
  const int gt = AddTreeNode(Field(j, "gt"), features, feature_index, nodes,
                             depth + 1);
  DecisionTree::Node& node = nodes[static_cast<std::size_t>(id)];
  node.feature = it->second;
  node.threshold = threshold;
  node.le = le;
  node.gt = gt;
  return id;
}

ClassifierPtr FromJson(const json& j) {
  const json& type_field = Field(j, "type");
  if (!type_field.is_string()) throw ConfigError("classifier: 'type' must be a string");
  const std::string type = type_field.get<std::string>();
  if (type == "tree") {
    std::vector<std::string> features;
    std::map<std::string, int> feature_index;
    std::vector<DecisionTree::Node> nodes;
    AddTreeNode(Field(j, "root"), features, feature_index, nodes, 0);
    return std::make_shared<DecisionTree>(std::move(features), std::move(nodes));
  }
  if (type == "linear") {
    return std::make_shared<LinearModel>(
        Strings(Field(j, "features"), "features"),
        Numbers(Field(j, "weights"), "weights"),
        j.contains("bias") ? Number(j.at("bias"), "bias") : 0.0,
        ParseOutput(j));
  }
  if (type == "net") {
    std::vector<FeedForwardNet::Layer> layers;
    const json& js = Field(j, "layers");
    if (!js.is_array()) throw ConfigError("classifier: 'layers' must be a list");
    for (const json& l : js) {
      FeedForwardNet::Layer layer;
      const json& w = Field(l, "weights");
      if (!w.is_array()) throw ConfigError("classifier: 'weights' must be a list");
      for (const json& row : w) layer.weights.push_back(Numbers(row, "weights"));
      layer.bias = Numbers(Field(l, "bias"), "bias");
      layers.push_back(std::move(layer));
    }
    return std::make_shared<FeedForwardNet>(
        Strings(Field(j, "features"), "features"), std::move(layers),
        ParseOutput(j));
  }
  if (type == "constant") {
    return std::make_shared<ConstantClassifier>(
        Number(Field(j, "value"), "value"));
  }
  if (type == "feature") {
    const json& f = Field(j, "feature");
    if (!f.is_string()) throw ConfigError("classifier: 'feature' must be a string");
    return std::make_shared<FeatureClassifier>(
        f.get<std::string>(), j.value("binary", false));
  }
  if (type == "external") {
    const json& c = Field(j, "command");
    std::vector<std::string> command =
        c.is_string() ? std::vector<std::string>{"/bin/sh", "-c",
                                                 c.get<std::string>()}
                      : Strings(c, "command");
    std::vector<std::string> features;
    if (j.contains("features")) features = Strings(j.at("features"), "features");
    return std::make_shared<ExternalClassifier>(
        std::move(command), std::move(features), j.value("binary", true));
  }
  throw ConfigError("classifier: unknown type '" + type + "'");
}

}  // namespace

ClassifierPtr ParseClassifierJson(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("classifier: invalid JSON: ") + e.what());
  }
  try {
    return FromJson(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("classifier: ") + e.what());
  }
}

ClassifierPtr LoadClassifierFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open classifier file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseClassifierJson(buffer.str());
}

}  // namespace fairverify

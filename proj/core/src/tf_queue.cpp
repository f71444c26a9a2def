#include "tfpq/tf_queue.hpp"

namespace tfpq {

std::vector<std::string> tf_queue::validate() const {
  std::vector<std::string> out;
  std::size_t total = 0;
  for (std::size_t i = 0; i < epochs_.size(); ++i) {
    for (auto& v : epochs_[i].validate())
      out.push_back("epoch " + std::to_string(i) + ": " + v);
    if (epochs_[i].epoch() != i)
      out.push_back("epoch " + std::to_string(i) + " mislabeled as " +
                    std::to_string(epochs_[i].epoch()));
    total += epochs_[i].size();
  }
  if (total != ctx_.live())
    out.push_back("epochs hold " + std::to_string(total) + " elements, context says " +
                  std::to_string(ctx_.live()));
  if (epochs_.size() != fingers_.size() + 1)
    out.push_back("epoch count does not match finger count");
  return out;
}

}  // namespace tfpq

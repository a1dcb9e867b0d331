#ifndef TREECROSS_ERROR_HPP
#define TREECROSS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace treecross {

/// Every domain failure carries a short machine-readable name (e.g.
/// "WrongEdgeCount", "NotAPermutation", "TooLarge") naming the violated
/// contract, plus a human-readable message.
class Error : public std::runtime_error {
  public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

  private:
    std::string name_;
};

}  // namespace treecross

#endif

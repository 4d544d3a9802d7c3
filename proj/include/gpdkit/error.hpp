#ifndef GPDKIT_ERROR_HPP_
#define GPDKIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpdkit {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! A structure (groupoid, group table, action, morphism, subgroupoid)
  //! failed one of its defining laws.
  class InvalidStructure : public Error {
   public:
    using Error::Error;
  };

  //! A name or identifier does not refer to anything.
  class UnknownName : public Error {
   public:
    using Error::Error;
  };

  //! A documented size cap was exceeded.
  class CapExceeded : public Error {
   public:
    using Error::Error;
  };

  //! A mathematical hypothesis of an operation does not hold for the input
  //! (for example a subgroupoid that is not normal).
  class HypothesisFailure : public Error {
   public:
    using Error::Error;
  };

  //! Syntax or load error in the text format; carries a 1-based position.
  class ParseError : public Error {
   public:
    ParseError(std::string const& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
                + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  //! List of violated invariants; empty means valid.
  struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const noexcept {
      return violations.empty();
    }

    void add(std::string what) {
      violations.push_back(std::move(what));
    }

    std::string to_string() const {
      if (valid()) {
        return "valid";
      }
      std::string out;
      for (auto const& v : violations) {
        if (!out.empty()) {
          out += '\n';
        }
        out += v;
      }
      return out;
    }
  };

}  // namespace gpdkit

#endif  // GPDKIT_ERROR_HPP_

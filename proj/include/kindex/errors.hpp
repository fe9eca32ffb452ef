#pragma once

#include <stdexcept>
#include <string>

namespace kindex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A record violates its type invariants (duplicate author, bad subset, ...).
class MalformedRecord : public Error {
  public:
    using Error::Error;
};

/// The requested author has no (indexed) publications in the corpus.
class NoPublications : public Error {
  public:
    explicit NoPublications(const std::string& author)
        : Error("author '" + author + "' has no publications in the corpus"), author_(author)
    {}
    const std::string& author() const noexcept { return author_; }

  private:
    std::string author_;
};

/// CIT/DOC requested for a portfolio with zero documents.
class EmptyPortfolio : public Error {
  public:
    EmptyPortfolio() : Error("DOC is zero: citations per document is undefined") {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Pearson correlation of a constant series.
class UndefinedCorrelation : public Error {
  public:
    using Error::Error;
};

}  // namespace kindex

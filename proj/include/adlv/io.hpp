#ifndef ADLV_IO_HPP_
#define ADLV_IO_HPP_

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>

#include "adlv/adlv.hpp"
#include "json.hpp"

namespace adlv {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// integers stay numbers, proper fractions become "p/q"
Json rational_to_json(const Rational& q);

Json xi_to_json(const XiPoly& p);  // {"xi_coeffs":[c0,c1,...]}
XiPoly xi_from_json(const Json& j);
Json table_to_json(const AffineWeylGroup& g, const ClassPolyTable& t);
ClassPolyTable table_from_json(const AffineWeylGroup& g, const Json& j);

Json descriptor_to_json(const SigmaClassDescriptor& d);
Json dim_report_to_json(const AffineWeylGroup& g, const DimReport& r);
Json ghkr_to_json(const GhkrReport& r);

// "nu=[1/2,1/2],kappa=[1]"
SigmaClassDescriptor parse_descriptor(const std::string& s);
// "unit", an element literal, or a descriptor
BElement parse_b(const AdlvEngine& a, const std::string& s);

// Line-delimited JSON cache of class polynomial tables, one file per (type,
// delta) inside a directory. The first line is a header; if it does not match
// the running library the file is ignored and started afresh.
class ClassPolyCache {
 public:
  ClassPolyCache(const std::filesystem::path& dir, const std::string& type_label,
                 const DiagramAut& delta);
  ~ClassPolyCache();

  const std::filesystem::path& file() const noexcept { return file_; }
  // Seeds the engine's memo. Returns the number of records read.
  std::size_t load(const ClassPolyEngine& h);
  // Appends one record. Thread safe.
  void append(const AffineWeylGroup& g, const ExtAffElt& w, const ClassPolyTable& t);
  // Installs append() as the observer of h.
  void attach(ClassPolyEngine& h);
  bool header_matched() const noexcept { return header_matched_; }

 private:
  Json header() const;
  void open_for_append();

  std::filesystem::path file_;
  std::string type_;
  std::string delta_;
  bool header_matched_ = false;
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace adlv

#endif  // ADLV_IO_HPP_

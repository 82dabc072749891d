#pragma once

#include <string_view>

/// Default data files compiled into the library (copies of data/*.txt).
namespace gepc::data {

std::string_view stopwords();
std::string_view abbreviations();
std::string_view function_words();
std::string_view cleaning_rules();
std::string_view sonority();
std::string_view affect_labels();

}  // namespace gepc::data

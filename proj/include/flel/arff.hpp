#pragma once

#include <string>
#include <vector>

#include "flel/dataset.hpp"

namespace flel {

// MULAN-style ARFF ingestion (dense or sparse data section). Label
// attributes are chosen either by the names listed in a MULAN XML header or
// as the trailing `label_count` attributes. Only numeric and {0,1} nominal
// attributes are supported.
Dataset load_arff(const std::string& arff_path, const std::string& xml_path, int label_count,
                  LabelMode mode);

// Attribute names listed as <label name="..."> in a MULAN XML header.
std::vector<std::string> parse_mulan_xml_labels(const std::string& xml_path);

}  // namespace flel

#pragma once

#include <string>
#include <vector>

namespace sullivan {

/// A structured check-result tree. Rendered as indented text or JSON with
/// the stable field names check / status / witness / paper_ref / children.
struct ReportNode {
    std::string check;
    std::string status;  // pass | fail | info | error | conjecture
    std::string witness;
    std::string paper_ref;
    std::vector<ReportNode> children;

    bool all_pass() const;
    static ReportNode pass(std::string check, std::string witness = "",
                           std::string paper_ref = "");
    static ReportNode fail(std::string check, std::string witness = "",
                           std::string paper_ref = "");
    static ReportNode info(std::string check, std::string witness = "",
                           std::string paper_ref = "");
    ReportNode& add(ReportNode child);
};

std::string render_text(const ReportNode& node);
std::string render_json(const ReportNode& node);

}  // namespace sullivan

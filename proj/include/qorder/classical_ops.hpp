#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qorder/classical_set.hpp"
#include "qorder/ordering.hpp"
#include "qorder/states.hpp"

namespace qorder {

/// Linear map in operator-sum form rho -> sum_i A_i rho A_i^dagger.
/// Trace preservation is not required.
class ClassicalOperation {
  public:
    /// Throws ShapeMismatch unless every Kraus operator is dim_out x dim_in,
    /// and InvalidArgument for an empty list or an inverse that does not
    /// undo the map on a matrix basis within 1e-8.
    ClassicalOperation(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
                       std::string label = {}, std::shared_ptr<const ClassicalOperation> inverse = nullptr);

    static ClassicalOperation identity(std::size_t dim);

    std::size_t dim_in() const noexcept { return dim_in_; }
    std::size_t dim_out() const noexcept { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
    const std::string& label() const noexcept { return label_; }
    const ClassicalOperation* inverse() const noexcept { return inverse_.get(); }
    std::shared_ptr<const ClassicalOperation> inverse_ptr() const noexcept { return inverse_; }

    /// Action on an arbitrary dim_in x dim_in matrix.
    ComplexMatrix act(const ComplexMatrix& m) const;

  private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
    std::shared_ptr<const ClassicalOperation> inverse_;
};

DensityMatrix apply(const ClassicalOperation& op, const DensityMatrix& rho);

/// max over matrix units E_jk of ||a(E_jk) - b(E_jk)||_F.
double action_distance(const ClassicalOperation& a, const ClassicalOperation& b);

/// outer o inner: Kraus products A_i B_j. The inverse is kept when both parts have one.
ClassicalOperation compose(const ClassicalOperation& outer, const ClassicalOperation& inner);

/// lambda a + (1 - lambda) b. Throws BadWeight outside [0, 1].
ClassicalOperation convex_combine(const ClassicalOperation& a, const ClassicalOperation& b, double lambda);

/// lambda Id + (1 - lambda) tr(.) gamma, realized from the spectral decomposition of gamma.
ClassicalOperation mixing_op(const DensityMatrix& gamma, double lambda);

/// rho -> tr(rho) gamma.
ClassicalOperation trace_replace_op(const DensityMatrix& gamma);

/// The operator A with A|c_j> = a_j |c_{f(j)}> on the span of the generators
/// and zero on its orthogonal complement. Generators must be linearly independent.
ClassicalOperation classical_function_op(std::span<const Complex> a, std::span<const std::size_t> f,
                                         const ClassicalSetModel& set);

/// classical_function_op for a permutation f and unimodular a on a generator basis,
/// with its classical inverse attached.
ClassicalOperation invertible_function_op(std::span<const Complex> a, std::span<const std::size_t> f,
                                          const ClassicalSetModel& set);

struct ClassicalityReport {
    bool classical = false;
    std::vector<double> residuals; ///< membership residual of each generator image, relative to its trace
    std::vector<std::size_t> failing;
};

/// Checks that every generator is mapped into the hull (or to zero).
ClassicalityReport check_classical(const ClassicalOperation& op, const ClassicalSetModel& set,
                                   double tol = kDefaultMembershipTolerance);

struct MonotoneReport {
    std::optional<PreorderCertificate> before; ///< rho <= rho'
    std::optional<PreorderCertificate> after;  ///< op(rho) <= op(rho'), both renormalized
    bool certified() const noexcept { return before.has_value() && after.has_value(); }
};

MonotoneReport check_monotone(const ClassicalOperation& op, const DensityMatrix& rho, const DensityMatrix& rho_prime,
                              const ClassicalSetModel& set, const PreorderOptions& opts = {});

/// op(rho) <= rho in the operation-based order: certified by op being classical.
/// The mixture-form certificate is attached when it also exists.
struct OperationOrderReport {
    ClassicalityReport classicality;
    std::optional<PreorderCertificate> mixture;
    bool certified() const noexcept { return classicality.classical; }
};

OperationOrderReport check_operation_order(const ClassicalOperation& op, const DensityMatrix& rho,
                                           const ClassicalSetModel& set, const PreorderOptions& opts = {});

/// rho and op(rho) are equivalent in the operation-based order for every rho
/// when op and its stored inverse are both classical.
struct InvertibleReport {
    ClassicalityReport forward;
    ClassicalityReport backward;
    double inverse_defect = 0.0; ///< action distance of inverse o op from the identity
    bool certified() const noexcept {
        return forward.classical && backward.classical && inverse_defect <= 1e-8;
    }
};

/// Throws InvalidArgument when op carries no inverse.
InvertibleReport check_invertible(const ClassicalOperation& op, const ClassicalSetModel& set,
                                  double tol = kDefaultMembershipTolerance);

} // namespace qorder

"""Finite-volume solver for a discrete 3-wave kinetic equation, with a
verification harness that checks the scheme's conservation, decay,
positivity, and moment/tail bounds at desk scale."""

from .bounds import (
    BoundSet,
    b_k,
    bound_set,
    c_k,
    creation_bound,
    decay_envelope,
    gamma_combinatorial_ratio,
    lambda_max_ml,
    ml_function,
    ml_moment,
    ml_moment_series,
    ml_moment_truncated,
    ml_series,
    young_constant,
)
from .collision import (
    apply_gain,
    apply_loss,
    apply_o,
    apply_s,
    apply_s1,
    apply_s2,
    apply_s3,
    apply_v,
    loss_rate_bound,
    weak_form_rhs,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    DomainError,
    FileParseError,
    MLOverflowError,
    NegativeValueError,
    NegativityWarning,
    NonFiniteState,
    ParameterViolation,
    SupportTooLarge,
    WavekinError,
)
from .integrator import (
    Method,
    SimConfig,
    Trajectory,
    dt_stability_estimate,
    euler_step,
    integrate,
    rk4_step,
)
from .model import (
    ModelParams,
    PowerTables,
    Truncation,
    build_tables,
    gamma_value,
    kernel_value,
    validate_params,
)
from .state import (
    CosineBump,
    FromFile,
    Indicator,
    InitialDataSpec,
    PointMasses,
    State,
    init_from_spec,
    l1_distance,
    l1_norm,
    min_value,
    moment,
    support_gcd,
)
from .config import RunConfig, parse_config
from .presets import PRESETS
from .verify import (
    CheckEntry,
    VerificationReport,
    check_conservation,
    check_energy_decay,
    check_exp_creation,
    check_gain_loss,
    check_gamma_estimate,
    check_integrator_order,
    check_interpolations,
    check_lattice_closure,
    check_ml_propagation,
    check_moment_creation,
    check_moment_estimate,
    check_moment_propagation,
    check_positivity_lattice,
    check_weak_form,
    lipschitz_experiment,
    reachable_lattice,
    rescale_to_ml_mass,
    run_all,
)

__version__ = "0.1.0"

from .experiment import ExperimentConfig, ExperimentRow, make_instance, run_experiment, trial_seed

__all__ = ["ExperimentConfig", "ExperimentRow", "make_instance", "run_experiment", "trial_seed"]

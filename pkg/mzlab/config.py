from pydantic import BaseModel
import os


class Settings(BaseModel):
    app_name: str = "mzlab"
    max_degree: int = int(os.getenv("MZLAB_MAX_DEGREE", "12"))
    max_power: int = int(os.getenv("MZLAB_MAX_POWER", "12"))
    probe_cap: int = int(os.getenv("MZLAB_PROBE_CAP", "64"))
    enumeration_budget: int = int(os.getenv("MZLAB_ENUMERATION_BUDGET", "4096"))
    random_seed: int = int(os.getenv("MZLAB_RANDOM_SEED", "1729"))
    random_trials: int = int(os.getenv("MZLAB_RANDOM_TRIALS", "100"))
    log_level: str = os.getenv("MZLAB_LOG_LEVEL", "WARNING")


settings = Settings()

import logging
from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application
    PROJECT_NAME: str = "indefinite-views"
    ENVIRONMENT: str = "development"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # World reasoning
    FRESH_CONSTANT_CAP: int = 6
    WORLD_UNIVERSE_CAP: int = 22
    STABLE_MODEL_NEGATION_CAP: int = 20
    SAT_SOLVER: str = "minisat22"

    # Repair search
    MAX_UPDATE_SIZE: int = 2
    MAX_RESULTS: int = 1000
    SEARCH_FRESH_CONSTANTS: int = 1
    SEARCH_TIMEOUT_SECONDS: Optional[float] = 60.0

    # Formula oracles
    FORMULA_VAR_CAP: int = 20

    class Config:
        env_file = ".env"
        env_prefix = "IDB_"
        case_sensitive = True
        extra = "ignore"

    def default_domain_budget(self):
        from src.worlds.schemas import DomainBudget

        return DomainBudget(
            fresh_cap=self.FRESH_CONSTANT_CAP,
            world_universe_cap=self.WORLD_UNIVERSE_CAP,
        )

    def default_search_budget(self):
        from src.repairs.schemas import SearchBudget

        return SearchBudget(
            max_update_size=self.MAX_UPDATE_SIZE,
            max_results=self.MAX_RESULTS,
            fresh_constants=self.SEARCH_FRESH_CONSTANTS,
            deadline_seconds=self.SEARCH_TIMEOUT_SECONDS,
            domain=self.default_domain_budget(),
        )


def configure_logging(level: Optional[str] = None) -> None:
    """Install a single stderr handler for the whole process"""
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


settings = Settings()

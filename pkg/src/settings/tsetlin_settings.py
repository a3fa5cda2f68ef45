from pydantic_settings import BaseSettings, SettingsConfigDict

from src.models.constants import DEFAULT_TOP_K


class TsetlinSettings(BaseSettings):
    log: str = "INFO"
    model_path: str | None = None
    default_top_k: int = DEFAULT_TOP_K

    model_config = SettingsConfigDict(env_file=".env", env_prefix="tm_", extra="ignore")

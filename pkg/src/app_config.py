from fastapi import FastAPI

app = FastAPI(
    title="Weighted Tsetlin Machine",
    description="Inference service for a trained weighted Tsetlin Machine: predictions, vote sums and per-class DNF rules.",  # noqa: E501
    version="0.1.0",
)

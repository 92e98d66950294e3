from .model import CEModel, ModelResponse, VerificationRequest

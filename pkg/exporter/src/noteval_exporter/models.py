"""Model loading helpers around the transformers auto classes.

All loaders put the model in eval mode (inference is deterministic for a
fixed model and input).  Loading failures of any kind surface as
ModelLoadError so the command line can report them uniformly.
"""

from __future__ import annotations

from .errors import ConfigError, ModelLoadError


def _load(auto_class, model_id: str):
    from transformers import AutoTokenizer
    try:
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = auto_class.from_pretrained(model_id)
    except Exception as exc:
        raise ModelLoadError(f"cannot load model {model_id!r}: {exc}") from None
    model.eval()
    return tokenizer, model


def load_encoder(model_id: str):
    """Tokenizer plus hidden-state encoder (AutoModel)."""
    from transformers import AutoModel
    return _load(AutoModel, model_id)


def load_seq2seq(model_id: str):
    """Tokenizer plus sequence-to-sequence LM for teacher forcing."""
    from transformers import AutoModelForSeq2SeqLM
    return _load(AutoModelForSeq2SeqLM, model_id)


def load_regressor(model_id: str):
    """Tokenizer plus single-output regression cross-encoder."""
    from transformers import AutoModelForSequenceClassification
    tokenizer, model = _load(AutoModelForSequenceClassification, model_id)
    if getattr(model.config, "num_labels", None) != 1:
        raise ModelLoadError(
            f"model {model_id!r} is not a single-output regression head "
            f"(num_labels={getattr(model.config, 'num_labels', None)})")
    return tokenizer, model


def resolve_layer(layer: int, num_hidden_layers: int) -> int:
    """Index into the hidden_states tuple (0 is the embedding output).

    Negative values count from the end, so -1 is the final layer.
    """
    n_states = num_hidden_layers + 1
    index = layer + n_states if layer < 0 else layer
    if not 0 <= index < n_states:
        raise ConfigError(f"layer {layer} out of range for a model with "
                          f"{num_hidden_layers} hidden layers")
    return index


def require_window_capacity(tokenizer, max_len: int) -> None:
    """The model tokenizer's max length must cover the window size."""
    limit = int(getattr(tokenizer, "model_max_length", 0) or 0)
    if limit < max_len:
        raise ConfigError(f"window max_len {max_len} exceeds the tokenizer's "
                          f"max length {limit}")

from .templates import (
    PromptTemplate,
    TemplateCatalog,
    default_catalog,
    parse_template_file,
    render_prompt,
)
from .cache import CompletionCache, CompletionRecord, request_digest
from .backends import (
    BackendKind,
    BackendProfile,
    CompletionClient,
    MockRule,
    RetryPolicy,
)

__all__ = [
    "PromptTemplate",
    "TemplateCatalog",
    "default_catalog",
    "parse_template_file",
    "render_prompt",
    "CompletionCache",
    "CompletionRecord",
    "request_digest",
    "BackendKind",
    "BackendProfile",
    "CompletionClient",
    "MockRule",
    "RetryPolicy",
]

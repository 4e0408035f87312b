"""Agent-side SDK for the ValleyBench environment protocol.

Talks to a running instance over its length-prefixed JSON socket protocol,
renders the benchmark prompt template, parses model completions into action
strings, and ships baseline agents (random, scripted oracle, LLM adapter).
"""

from valleybench_sdk.client import (
    EnvClient,
    EpisodeDone,
    EpisodeHandle,
    ProtocolFault,
    ServerError,
)
from valleybench_sdk.actions import ActionParseError, parse_actions, validate_action
from valleybench_sdk.prompts import PromptContext, PromptError, build_prompt, load_template
from valleybench_sdk.agents import LLMAgent, LLMClient, RandomAgent, RecordedLLM, ScriptedAgent, scripted_oracle

__version__ = "0.1.0"

__all__ = [
    "EnvClient",
    "EpisodeHandle",
    "EpisodeDone",
    "ServerError",
    "ProtocolFault",
    "parse_actions",
    "validate_action",
    "ActionParseError",
    "PromptContext",
    "PromptError",
    "build_prompt",
    "load_template",
    "RandomAgent",
    "ScriptedAgent",
    "LLMAgent",
    "LLMClient",
    "RecordedLLM",
    "scripted_oracle",
    "__version__",
]

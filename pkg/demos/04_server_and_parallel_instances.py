#!/usr/bin/env python3
"""The socket protocol and parallel isolated instances: spin four servers,
interleave steps across them, and confirm each trajectory matches its
serial rerun byte for byte.

Run with: python demos/04_server_and_parallel_instances.py
"""

from valleybench.instance import EnvInstance, InstanceConfig, ObservationConfig, observation_digest
from valleybench.protocol import InstanceServer, ProtocolClient

SCRIPT = [
    "choose_item(slot_index=4)",
    "move(x=16, y=14)",
    'use(direction="down")',
    "move(x=17, y=14)",
    'use(direction="down")',
]

config = InstanceConfig(observation=ObservationConfig(mode="text_only"))

# Serial baseline, in process.
baseline = []
instance = EnvInstance(config=config)
instance.reset("clear_10_weeds_with_scythe", seed=5)
for action in SCRIPT:
    baseline.append(observation_digest(instance.step([action])["observation"]))
print(f"serial baseline: {len(baseline)} observation digests")

# Four servers on four ports, stepped in an interleaved round-robin.
servers = [InstanceServer(port=0, config=config).start() for _ in range(4)]
clients = [ProtocolClient(s.host, s.port) for s in servers]
print("serving on ports:", [s.port for s in servers])
for client in clients:
    client.reset("clear_10_weeds_with_scythe", 5)
streams = [[] for _ in clients]
for action in SCRIPT:
    for stream, client in zip(streams, clients):
        payload = client.step([action])["payload"]
        stream.append(observation_digest(payload["observation"]))

print("instances matching the serial baseline:",
      sum(stream == baseline for stream in streams), "/", len(streams))

for client in clients:
    client.close()
for server in servers:
    server.stop()

# scripts/create_langsmith_dataset.py

from dotenv import load_dotenv
import os
import sys

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

load_dotenv(dotenv_path=".env")

from langsmith import Client
from src.utils import config

client = Client()

# Delete old dataset
try:
    datasets = list(client.list_datasets(dataset_name=config.EVAL_DATASET))
    for ds in datasets:
        client.delete_dataset(dataset_id=ds.id)
        print(f"Deleted old dataset: {ds.name}")
except Exception as e:
    print(f"No existing dataset to delete: {e}")

# Create fresh dataset
dataset = client.create_dataset(
    config.EVAL_DATASET,
    description="Twisted Zhu toolkit CLI acceptance jobs"
)

print(f"Created new dataset: {dataset.name}")
print(f"Dataset ID: {dataset.id}\n")

# Expected values are compared after decoding "num/den" back to Fractions
test_cases = [
    {
        "input": {
            "name": "Power expansion at k = l+1",
            "argv": ["zhu-power", "--algebra", "A1", "--e", "f_theta", "--level", "2", "--k", "3"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": True,
            "values": {"coefficients": {"3": 1}},
        }
    },
    {
        "input": {
            "name": "Power expansion below the top power",
            "argv": ["zhu-power", "--algebra", "A1", "--e", "f_theta", "--level", "2", "--k", "2"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": True,
            "values": {"coefficients": {"0": 2, "1": 2, "2": 1}},
        }
    },
    {
        "input": {
            "name": "Simple vacuum module of sl2 at level 1",
            "argv": ["graded-dims", "--algebra", "A1", "--level", "1", "--lambda", "0", "--depth", "2",
                     "--simple", "--format", "csv"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": None,
            "values": {"rows.0.dim": "1/1", "rows.1.dim": "3/1", "rows.2.dim": "4/1"},
        }
    },
    {
        "input": {
            "name": "Twisted Jacobi identity, A2 flip",
            "argv": ["verify", "--identity", "twisted-jacobi", "--algebra", "A2", "--mu", "flip", "--depth", "2"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": True,
            "values": {},
        }
    },
    {
        "input": {
            "name": "Classification for sl2 at level 1",
            "argv": ["classify", "--algebra", "A1", "--level", "1", "--depth", "2"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": None,
            "values": {"sigma_admissible": [[0], [1]]},
        }
    },
    {
        "input": {
            "name": "Classification for the A2 flip at level 1",
            "argv": ["classify", "--algebra", "A2", "--mu", "flip", "--level", "1", "--depth", "1"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": None,
            "values": {"sigma_admissible": [[1]], "within_prediction": True, "lists_match": True},
        }
    },
    {
        "input": {
            "name": "Power field on the A2 flip, integrable top",
            "argv": ["verify", "--identity", "power-field", "--algebra", "A2", "--mu", "flip",
                     "--level", "1", "--lambda", "1", "--depth", "2"],
        },
        "expected": {
            "exit_code": 0,
            "identity_ok": True,
            "values": {"lambda_admissible": True, "vanishes_on_simple": True},
        }
    },
    {
        "input": {
            "name": "Level at minus the dual Coxeter number",
            "argv": ["graded-dims", "--algebra", "A1", "--level", "-2", "--depth", "1"],
        },
        "expected": {
            "exit_code": 1,
            "identity_ok": None,
            "values": {},
        }
    },
]

for i, tc in enumerate(test_cases, 1):
    client.create_example(
        inputs=tc["input"],
        outputs=tc["expected"],
        dataset_id=dataset.id
    )
    print(f"Case {i}: {tc['input']['name']}")

print(f"\n{'='*60}")
print(f"Dataset created with {len(test_cases)} test cases")
print(f"{'='*60}")

import pandas as pd

from dataio import DatasetSchema, FeatureColumn, FeatureKind, dataset_from_frame

CREDIT_SCHEMA = DatasetSchema(
    target_column="risk",
    positive_label="good",
    sensitive_column="sex",
    group0_value="male",
    group1_value="female",
    feature_columns=[
        FeatureColumn("age", FeatureKind.continuous),
        FeatureColumn("housing", FeatureKind.categorical),
    ],
)


def credit_frame(n: int = 4) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "age": [str(20 + i) for i in range(n)],
            "housing": [("own", "rent", "free")[i % 3] for i in range(n)],
            "sex": [("male", "female")[i % 2] for i in range(n)],
            "risk": [("good", "bad")[i % 2] for i in range(n)],
        },
    )


def labelled_dataset(labels, groups):
    """Dataset with one continuous feature equal to the row number."""
    frame = pd.DataFrame(
        {
            "age": [str(i) for i in range(len(labels))],
            "housing": ["own"] * len(labels),
            "sex": ["female" if g else "male" for g in groups],
            "risk": ["good" if y else "bad" for y in labels],
        },
    )
    return dataset_from_frame(frame, CREDIT_SCHEMA)[0]

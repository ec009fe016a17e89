"""Sample Bugzilla REST responses for testing."""
import base64

BUGZILLA_URL = "https://bugzilla.test"

SAMPLE_VERSION_RESPONSE = {"version": "5.1.2"}

SAMPLE_BUG_LIST_RESPONSE = {"bugs": [{"id": 101}, {"id": 202}, {"id": 303}]}

POC_101 = "struct S { int n; int a[]; };\nvoid f(struct S s);\nvoid g(struct S *p) { f(*p); }\n"


def _encode(text: str) -> str:
    return base64.b64encode(text.encode("utf-8")).decode("ascii")


def comments_response(bug_id: str, texts):
    return {
        "bugs": {
            bug_id: {
                "comments": [
                    {"id": index, "count": index, "text": text} for index, text in enumerate(texts)
                ]
            }
        },
        "comments": {},
    }


def attachments_response(bug_id: str, attachments):
    return {"bugs": {bug_id: attachments}, "attachments": {}}


SAMPLE_COMMENTS_101 = comments_response(
    "101",
    [
        "GCC ICEs in expand_expr when a struct with a flexible array member is passed by value.",
        "Confirmed on trunk.",
        "The master branch has been updated by Jane Doe:\n\nexpr.cc: Handle BLKmode copies.",
        "The releases/gcc-13 branch has been updated by Jane Doe:\n\nBackport.",
    ],
)

SAMPLE_ATTACHMENTS_101 = attachments_response(
    "101",
    [
        {
            "id": 9,
            "file_name": "fix.patch",
            "content_type": "text/plain",
            "is_patch": 1,
            "is_obsolete": 0,
            "data": _encode("--- a/expr.cc\n+++ b/expr.cc\n"),
        },
        {
            "id": 10,
            "file_name": "pr101.c",
            "content_type": "application/octet-stream",
            "is_patch": 0,
            "is_obsolete": 0,
            "data": _encode(POC_101),
        },
    ],
)

# No commit notices: extraction uses only the report and PoC
SAMPLE_COMMENTS_202 = comments_response(
    "202", ["ICE on valid code with computed goto.", "Still happens with -O3."]
)
SAMPLE_ATTACHMENTS_202 = attachments_response(
    "202",
    [
        {
            "id": 20,
            "file_name": "t.c",
            "content_type": "text/x-csrc",
            "is_patch": 0,
            "is_obsolete": 0,
            "data": _encode("void h(void) { l: goto l; }\n"),
        }
    ],
)

# Attachment with corrupt base64
SAMPLE_COMMENTS_303 = comments_response("303", ["Crash with bad attachment."])
SAMPLE_ATTACHMENTS_303 = attachments_response(
    "303",
    [
        {
            "id": 30,
            "file_name": "bad.c",
            "content_type": "text/plain",
            "is_patch": 0,
            "is_obsolete": 0,
            "data": "@@not-base64@@",
        }
    ],
)

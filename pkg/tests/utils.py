import os
import tempfile

from khtight.braid_link import BraidWord, family_word, parse_braid


E125 = "-1*{r},2,1,1,1,2"
E141 = "-1*{r},2,1,1,1,2,2"
E130 = "-1*{r},2,1,1,2,2,3,-2,3"
NON_EXAMPLE = "-1*{r},2,1,1,2"

CORPUS = ["1", "1,1,1", "-1,-1,-1", "1,-2,1,-2", "1,1,1,2", "1,2,3", "-1,2",
          "2,1,1,1,2", "-1,2,1,1,1,2", "-1,-1,2,1,1,1,2", "-1,-1,-1,2,1,1,1,2",
          "2,1,1,1,2,2", "-1,2,1,1,1,2,2", "-1,-1,-1,2,1,1,2", "1,1,1,1,1",
          "2,1,1,2,2,3,-2,3"]


def get_temp_folder(folder_name: str = "khtight-test") -> str:
    folder_tmp = os.path.join(tempfile.gettempdir(), folder_name)
    if not os.path.exists(folder_tmp):
        os.mkdir(folder_tmp)
    return folder_tmp


def member(template: str, r: int) -> BraidWord:
    return family_word(template, r)


def corpus_words() -> list[BraidWord]:
    return [parse_braid(text) for text in CORPUS]
